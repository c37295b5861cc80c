"""Outcome-level simulation of the destructive wedge sketch.

The sketch holds ``2m`` scratch slots plus directed signed edge items.  A
pair query either detects a stored wedge (returning +1 or -1 and destroying
the sketch) or returns ``BOTTOM`` and deletes the queried items that were
present.  Only the outcome distribution is simulated:

* both items present: +1 with probability ``2/|S|``, else both are removed
* one item present: with probability ``1/|S|`` the sketch is destroyed and
  +1 or -1 is returned with equal odds, else that item is removed
* neither present: ``BOTTOM``, nothing changes and no randomness is used

Randomness comes from the owner's ``RandomState``.  At creation the sketch
draws one uniform threshold ``U`` and keeps a running survival product; a
query whose destroy probability is ``p`` multiplies the product by ``1 - p``
and destroys the sketch once the product drops to ``U`` or below.  Given the
history, every query then destroys with probability exactly ``p``, while a
whole trajectory costs a single draw (plus one for the sign in the
one-present case).  The compiled light kernel replays the same arithmetic.
"""
from __future__ import annotations

import json

import numpy as np

from .stream import StreamMode


class SketchError(RuntimeError):
    pass


class DestroyedSketchError(SketchError):
    """Any operation on a sketch after a non-bottom measurement."""


class MissingScratchError(SketchError):
    """Insert at a step whose scratch slots are not available (caller bug)."""


class SketchBudgetError(SketchError):
    """More inserts than the declared edge budget."""


class _Bottom:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "BOTTOM"

    def __bool__(self):
        return False


BOTTOM = _Bottom()


class SketchState:
    """Single-owner sketch with budget ``m`` (``2m`` scratch slots).

    Edge items are ``(head, tail, sign)``; a secondary index keyed on the tail
    lets estimators find all items pointing at a vertex in O(degree).
    In unsigned mode every item is stored with sign +1 and queries ignore the
    requested sign.
    """

    def __init__(self, m: int, rng: np.random.RandomState, mode: StreamMode = StreamMode.SIGNED_T1):
        if m < 1:
            raise ValueError(f"edge budget must be at least 1, got {m}")
        self.m = int(m)
        self.rng = rng
        self.mode = mode
        self.scratch = set(range(2 * self.m))
        self.edges: set = set()
        self.by_tail: dict = {}
        self.destroyed = False
        self._threshold = rng.random_sample()
        self._survival = 1.0

    def __copy__(self):
        raise SketchError("a sketch cannot be copied")

    def __deepcopy__(self, memo):
        raise SketchError("a sketch cannot be copied")

    def __len__(self) -> int:
        return len(self.scratch) + len(self.edges)

    def _check(self):
        if self.destroyed:
            raise DestroyedSketchError("sketch has been measured and destroyed")

    def _norm(self, item):
        head, tail, sign = item
        if self.mode is StreamMode.UNSIGNED_ALL:
            sign = 1
        return (int(head), int(tail), int(sign))

    def contains(self, item) -> bool:
        return self._norm(item) in self.edges

    def heads_at(self, tail: int) -> set:
        """Heads of every stored item whose tail is ``tail``."""
        return {h for h, _ in self.by_tail.get(tail, ())}

    def _add(self, item):
        self.edges.add(item)
        self.by_tail.setdefault(item[1], set()).add((item[0], item[2]))

    def _remove(self, item):
        self.edges.discard(item)
        bucket = self.by_tail.get(item[1])
        if bucket is not None:
            bucket.discard((item[0], item[2]))
            if not bucket:
                del self.by_tail[item[1]]

    def _collapses(self, p: float) -> bool:
        nxt = self._survival * (1.0 - p)
        if nxt <= self._threshold:
            return True
        self._survival = nxt
        return False

    def insert(self, edge, step: int) -> None:
        """Replace scratch slots ``2*step`` and ``2*step+1`` by both directed copies."""
        self._check()
        if step >= self.m:
            raise SketchBudgetError(f"insert #{step} exceeds the edge budget m={self.m}")
        lo, hi = 2 * step, 2 * step + 1
        if lo not in self.scratch or hi not in self.scratch:
            raise MissingScratchError(f"scratch slots {lo}, {hi} already consumed")
        v, w, s = edge
        fwd = self._norm((v, w, s))
        bwd = self._norm((w, v, s))
        if fwd in self.edges or bwd in self.edges:
            raise SketchError(f"edge {(v, w)} is already stored")
        self.scratch.discard(lo)
        self.scratch.discard(hi)
        self._add(fwd)
        self._add(bwd)

    def query_pair(self, x, y):
        """Measure the wedge ``{x, y}``; returns +1, -1 or ``BOTTOM``."""
        self._check()
        x = self._norm(x)
        y = self._norm(y)
        if x == y:
            raise ValueError("query items must differ")
        has_x = x in self.edges
        has_y = y in self.edges
        if not has_x and not has_y:
            return BOTTOM
        size = len(self)
        if has_x and has_y:
            if self._collapses(2.0 / size):
                self.destroyed = True
                return 1
            self._remove(x)
            self._remove(y)
            return BOTTOM
        if self._collapses(1.0 / size):
            self.destroyed = True
            return -1 if self.rng.random_sample() < 0.5 else 1
        self._remove(x if has_x else y)
        return BOTTOM

    def to_json(self) -> str:
        """Debug dump: budget, mode, destroyed flag, scratch slots and items."""
        return json.dumps({
            "m": self.m,
            "mode": self.mode.value,
            "destroyed": self.destroyed,
            "scratch": sorted(self.scratch),
            "edges": [list(e) for e in sorted(self.edges)],
        }, sort_keys=True)


def create(m: int, rng, mode: StreamMode = StreamMode.SIGNED_T1) -> SketchState:
    if not isinstance(rng, np.random.RandomState):
        rng = np.random.RandomState(rng)
    return SketchState(m, rng, mode)


def insert(s: SketchState, edge, step: int) -> None:
    s.insert(edge, step)


def query_pair(s: SketchState, x, y):
    return s.query_pair(x, y)


def load_json(text: str) -> dict:
    """Parse a debug dump back into plain Python containers."""
    d = json.loads(text)
    d["scratch"] = set(d["scratch"])
    d["edges"] = {tuple(e) for e in d["edges"]}
    return d
