"""On-disk cache of computed spaces.

Entries are pickles keyed by a content hash of (cache version, kind,
parameters); writes go through a temp file and an atomic rename, and a
corrupt or unreadable entry falls back to recomputation.
"""

from __future__ import annotations

import hashlib
import os
import pickle
import tempfile

CACHE_VERSION = 1

_active_dir = None


def set_cache_dir(path):
    """Enable the on-disk cache (None disables it)."""
    global _active_dir
    if path is None:
        _active_dir = None
        return
    os.makedirs(path, exist_ok=True)
    _active_dir = path


def cache_dir():
    return _active_dir


def _entry_path(kind, params):
    digest = hashlib.sha256(
        repr((CACHE_VERSION, kind, params)).encode("utf-8")
    ).hexdigest()
    return os.path.join(_active_dir, "%s-%s.pkl" % (kind, digest[:32]))


def get(kind, params):
    if _active_dir is None:
        return None
    path = _entry_path(kind, params)
    try:
        with open(path, "rb") as fh:
            return pickle.load(fh)
    except (OSError, pickle.UnpicklingError, EOFError, AttributeError, ValueError):
        return None


def put(kind, params, obj):
    if _active_dir is None:
        return
    path = _entry_path(kind, params)
    fd, tmp = tempfile.mkstemp(dir=_active_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            pickle.dump(obj, fh, protocol=pickle.HIGHEST_PROTOCOL)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


def roundtrip(kind, params, obj):
    """Store and reload an object; used to validate cache fidelity."""
    put(kind, params, obj)
    return get(kind, params)
