"""HTTP client treating an external classifier endpoint as a probability oracle.

Wire protocol: POST {base}/predict with {"texts": [...]} returning
{"probs": [[p0, p1], ...]}, and GET {base}/health returning
{"model_id": str, "n_classes": int}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import requests


class EndpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class ModelEndpoint:
    base_url: str
    timeout_ms: int = 10_000
    max_batch: int = 64
    model_id: str = ""

    def __post_init__(self):
        if self.timeout_ms <= 0:
            raise ValueError("timeout must be > 0")
        if self.max_batch < 1:
            raise ValueError("max_batch must be >= 1")

    @property
    def timeout_s(self) -> float:
        return self.timeout_ms / 1000.0


def _post_batch(endpoint: ModelEndpoint, texts: list[str], batch_range: str) -> np.ndarray:
    url = endpoint.base_url.rstrip("/") + "/predict"
    last_timeout = None
    for attempt in range(2):  # one retry on timeout, then fail
        try:
            resp = requests.post(url, json={"texts": texts}, timeout=endpoint.timeout_s)
            break
        except requests.Timeout as e:
            last_timeout = e
        except requests.RequestException as e:
            raise EndpointError(
                f"endpoint unreachable: {url} for batch {batch_range} ({e})"
            ) from None
    else:
        raise EndpointError(f"timeout from {url} for batch {batch_range}") from last_timeout

    if not 200 <= resp.status_code < 300:
        raise EndpointError(
            f"{url} returned {resp.status_code} for batch {batch_range}"
        )
    try:
        probs = resp.json()["probs"]
    except (ValueError, KeyError) as e:
        raise EndpointError(
            f"malformed response body from {url} for batch {batch_range}: {e}"
        ) from None
    arr = np.asarray(probs, dtype=float)
    if arr.ndim != 2 or arr.shape != (len(texts), 2):
        raise EndpointError(
            f"row-count mismatch from {url} for batch {batch_range}: "
            f"sent {len(texts)} texts, got shape {arr.shape}"
        )
    if (arr < 0).any() or np.abs(arr.sum(axis=1) - 1.0).max() > 1e-6:
        raise EndpointError(
            f"invalid probability rows from {url} for batch {batch_range}"
        )
    return arr


def remote_predict_proba(endpoint: ModelEndpoint, texts: list[str]) -> np.ndarray:
    """One probability row per text, in input order; batches beyond
    max_batch are chunked transparently."""
    if not texts:
        raise ValueError("texts must be non-empty")
    if any(not t for t in texts):
        raise ValueError("every text must be non-empty")
    chunks = []
    for start in range(0, len(texts), endpoint.max_batch):
        batch = texts[start : start + endpoint.max_batch]
        chunks.append(
            _post_batch(endpoint, batch, f"[{start}:{start + len(batch)})")
        )
    return np.vstack(chunks)


def healthcheck(endpoint: ModelEndpoint) -> dict:
    url = endpoint.base_url.rstrip("/") + "/health"
    try:
        resp = requests.get(url, timeout=endpoint.timeout_s)
    except requests.RequestException as e:
        raise EndpointError(f"endpoint unreachable: {url} ({e})") from None
    if not 200 <= resp.status_code < 300:
        raise EndpointError(f"{url} returned {resp.status_code}")
    body = resp.json()
    if body.get("n_classes") != 2:
        raise EndpointError(
            f"incompatible endpoint: expected 2 classes, got {body.get('n_classes')}"
        )
    return {"model_id": body.get("model_id", ""), "n_classes": 2}
