"""Shared fixtures: backend/label-map grid and synthetic corpora."""

import random
import re

import pytest

from dynpdt.core import LABEL_MAPS, REPRS

ALL_COMBOS = [(r, m) for r in REPRS for m in LABEL_MAPS]

# worked example: four words sharing the techn- stem
TECH_WORDS = [b"technology", b"technics", b"technique", b"technically"]

_LOWER = b"abcdefghijklmnopqrstuvwxyz"


def random_words(n: int, seed: int = 0, min_len: int = 4, max_len: int = 12) -> list[bytes]:
    rng = random.Random(seed)
    out: set[bytes] = set()
    while len(out) < n:
        k = rng.randint(min_len, max_len)
        out.add(bytes(rng.choices(_LOWER, k=k)))
    return sorted(out)


def dna_kmers(n: int, seed: int = 0, k: int = 12) -> list[bytes]:
    rng = random.Random(seed)
    out: set[bytes] = set()
    while len(out) < n:
        out.add(bytes(rng.choices(b"ACGT", k=k)))
    return sorted(out)


_HOSTS = [b"www.%s.%s" % (w, t)
          for w in (b"acme", b"globex", b"initech", b"umbrella", b"stark",
                    b"wayne", b"tyrell", b"cyberdyne", b"aperture", b"hooli")
          for t in (b"com", b"org", b"net")]

_SEGMENTS = [w.encode() for w in (
    "about", "api", "archive", "assets", "blog", "cart", "catalog", "docs",
    "download", "events", "faq", "forum", "help", "images", "index", "legal",
    "login", "media", "news", "orders", "pages", "posts", "press", "products",
    "profile", "search", "shop", "static", "status", "store", "support",
    "tags", "team", "terms", "users", "videos", "wiki", "account")]


def synthetic_urls(n: int, seed: int = 0) -> list[bytes]:
    """Distinct URLs with heavy prefix sharing, each at most 60 bytes."""
    rng = random.Random(seed)
    out = []
    for idx in range(n):
        host = _HOSTS[rng.randrange(len(_HOSTS))]
        depth = rng.randint(1, 2)
        segs = b"/".join(_SEGMENTS[rng.randrange(len(_SEGMENTS))] for _ in range(depth))
        url = b"http://%s/%s/%06d" % (host, segs, idx)
        assert len(url) <= 60
        out.append(url)
    return out


@pytest.fixture(scope="session")
def small_words() -> list[bytes]:
    return random_words(300, seed=1)


@pytest.fixture(params=ALL_COMBOS, ids=lambda c: f"{c[0]}-{c[1]}")
def combo(request) -> tuple[str, str]:
    return request.param


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One ACCEPTANCE line per passed acceptance criterion."""
    passed = set()
    for rep in terminalreporter.stats.get("passed", []):
        m = re.search(r"test_criterion_0*(\d+)", rep.nodeid)
        if m:
            passed.add(int(m.group(1)))
    for n in sorted(passed):
        terminalreporter.write_line(f"ACCEPTANCE {n}: PASS")
