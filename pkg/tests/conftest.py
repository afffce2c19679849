"""Shared fixtures: gallery analysis results are computed once per session.

Several test modules assert on the same heavy gallery runs (golden verdicts,
cross-property consistency, acceptance timing); the cache keeps each
(entry, check) pair to a single computation.  Records carry the wall time of
that one computation, so timing assertions are unaffected by cache hits.
"""

from __future__ import annotations

import pytest

from hutchlab.analysis import run_check
from hutchlab.gallery import gallery_entry

_CACHE: dict[tuple[str, str], dict] = {}


def gallery_check(entry_id: str, check: str) -> dict:
    key = (entry_id, check)
    if key not in _CACHE:
        entry = gallery_entry(entry_id)
        _CACHE[key] = run_check(check, entry.system, entry.params)
    return _CACHE[key]


@pytest.fixture(scope="session")
def gallery_results():
    return gallery_check
