"""Subsets of ``[0, N]`` and the interval-filling closure on them.

A :class:`WeightSet` stands for the weight-determined set of all grid points
whose weight lies in it.  ``l_step`` is the one-step filling operator and
``l_bar`` its fixpoint; ``l_bar`` is available both as the linear-time
endpoint-stripping recursion and as naive iteration of ``l_step``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidSetError


class WeightSet:
    """Immutable subset of ``[0, n_max]`` stored as a dense boolean mask."""

    __slots__ = ("n_max", "_mask", "_hash")

    def __init__(self, n_max: int, mask):
        mask = np.array(mask, dtype=bool)
        if mask.shape != (n_max + 1,):
            raise ValueError(f"mask must have length {n_max + 1}, got {mask.shape}")
        mask.flags.writeable = False
        self.n_max = int(n_max)
        self._mask = mask
        self._hash = None

    @classmethod
    def of(cls, n_max: int, items: Iterable[int]) -> "WeightSet":
        mask = np.zeros(n_max + 1, dtype=bool)
        for t in items:
            if not 0 <= t <= n_max:
                raise InvalidSetError(f"weight {t} outside [0, {n_max}]")
            mask[t] = True
        return cls(n_max, mask)

    @classmethod
    def empty(cls, n_max: int) -> "WeightSet":
        return cls(n_max, np.zeros(n_max + 1, dtype=bool))

    @classmethod
    def full(cls, n_max: int) -> "WeightSet":
        return cls(n_max, np.ones(n_max + 1, dtype=bool))

    @classmethod
    def interval(cls, n_max: int, a: int, b: int) -> "WeightSet":
        mask = np.zeros(n_max + 1, dtype=bool)
        mask[max(a, 0):min(b, n_max) + 1] = True
        return cls(n_max, mask)

    @classmethod
    def from_bits(cls, n_max: int, bits: int) -> "WeightSet":
        """Set whose element ``t`` is bit ``t`` of ``bits``."""
        return cls(n_max, [(bits >> t) & 1 for t in range(n_max + 1)])

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def elements(self) -> list[int]:
        return np.flatnonzero(self._mask).tolist()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return int(np.count_nonzero(self._mask))

    def __contains__(self, t) -> bool:
        return 0 <= t <= self.n_max and bool(self._mask[t])

    def _same_universe(self, other: "WeightSet") -> None:
        if not isinstance(other, WeightSet) or other.n_max != self.n_max:
            raise ValueError("weight sets live in different intervals")

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightSet):
            return NotImplemented
        return self.n_max == other.n_max and bool(np.array_equal(self._mask, other._mask))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n_max, self._mask.tobytes()))
        return self._hash

    def __or__(self, other: "WeightSet") -> "WeightSet":
        self._same_universe(other)
        return WeightSet(self.n_max, self._mask | other._mask)

    def __and__(self, other: "WeightSet") -> "WeightSet":
        self._same_universe(other)
        return WeightSet(self.n_max, self._mask & other._mask)

    def __sub__(self, other: "WeightSet") -> "WeightSet":
        self._same_universe(other)
        return WeightSet(self.n_max, self._mask & ~other._mask)

    def complement(self) -> "WeightSet":
        return WeightSet(self.n_max, ~self._mask)

    def __le__(self, other: "WeightSet") -> bool:
        self._same_universe(other)
        return not bool(np.any(self._mask & ~other._mask))

    def issubset(self, other: "WeightSet") -> bool:
        return self <= other

    def is_full(self) -> bool:
        return bool(self._mask.all())

    def shifted(self, a: int, b: int) -> "WeightSet":
        """View of ``self ∩ [a, b]`` translated to live in ``[0, b - a]``."""
        return WeightSet(b - a, self._mask[a:b + 1])

    def intervals(self) -> list[tuple[int, int]]:
        m = self._mask.astype(np.int8)
        edges = np.diff(np.concatenate(([0], m, [0])))
        starts = np.flatnonzero(edges == 1)
        ends = np.flatnonzero(edges == -1) - 1
        return list(zip(starts.tolist(), ends.tolist()))

    def to_text(self) -> str:
        """Interval shorthand, e.g. ``"0-1,3,5-6"``; the empty set is ``"{}"``."""
        parts = [str(a) if a == b else f"{a}-{b}" for a, b in self.intervals()]
        return ",".join(parts) if parts else "{}"

    def __repr__(self) -> str:
        return f"WeightSet({self.n_max}, {{{self.to_text()}}})"


_RANGE = re.compile(r"^(\d+)\s*-\s*(\d+)$")


def parse_weightset(n_max: int, text: str) -> WeightSet:
    """Parse a set spec.

    Accepted forms: ``"1,3,5"``, ranges ``"0-2,4-6"``, ``"t:i"`` for the two-tails
    set, ``"parity:0"``/``"parity:1"``, ``"mod:m:i"`` for a residue class,
    ``"full"``, and ``"empty"``/``"{}"``/``""``.
    """
    text = text.strip()
    if text in ("", "{}", "empty"):
        return WeightSet.empty(n_max)
    if text == "full":
        return WeightSet.full(n_max)
    try:
        if text.startswith("t:"):
            return t_set(n_max, int(text[2:]))
        if text.startswith("parity:"):
            return residue_class(n_max, 2, int(text[7:]))
        if text.startswith("mod:"):
            m, i = text[4:].split(":")
            return residue_class(n_max, int(m), int(i))
        items: list[int] = []
        for part in text.split(","):
            part = part.strip()
            match = _RANGE.match(part)
            if match:
                items.extend(range(int(match[1]), int(match[2]) + 1))
            else:
                items.append(int(part))
    except ValueError as exc:
        raise InvalidSetError(f"bad set spec {text!r}: {exc}") from None
    return WeightSet.of(n_max, items)


def _check_degree(n_max: int, d: int) -> None:
    if not 0 <= d <= n_max:
        raise ValueError(f"degree {d} outside [0, {n_max}]")


def _check_set(n_max: int, E: WeightSet) -> None:
    if E.n_max != n_max:
        raise ValueError(f"set lives in [0, {E.n_max}], expected [0, {n_max}]")


def t_set(n_max: int, i: int) -> WeightSet:
    """The two-tails set ``[0, i-1] ∪ [N-i+1, N]``."""
    if not 0 <= i <= n_max:
        raise ValueError(f"tail index {i} outside [0, {n_max}]")
    mask = np.zeros(n_max + 1, dtype=bool)
    mask[:i] = True
    mask[n_max - i + 1:] = True
    return WeightSet(n_max, mask)


def residue_class(n_max: int, m: int, i: int) -> WeightSet:
    """``{j in [0, N] : j ≡ i (mod m)}``."""
    if m < 1 or not 0 <= i < m:
        raise InvalidSetError(f"bad residue class {i} mod {m}")
    mask = np.zeros(n_max + 1, dtype=bool)
    mask[i::m] = True
    return WeightSet(n_max, mask)


def l_step(n_max: int, d: int, E: WeightSet) -> WeightSet:
    _check_degree(n_max, d)
    _check_set(n_max, E)
    t = np.flatnonzero(E.mask)
    s = len(t)
    if s <= d:
        return E
    mask = E.mask.copy()
    mask[:t[s - d - 1] + 1] = True
    mask[t[d]:] = True
    return WeightSet(n_max, mask)


def _iterate(n_max: int, d: int, E: WeightSet) -> tuple[WeightSet, int]:
    steps = 0
    while True:
        nxt = l_step(n_max, d, E)
        if nxt == E:
            return E, steps
        E = nxt
        steps += 1


def l_bar_naive(n_max: int, d: int, E: WeightSet) -> WeightSet:
    """Fixpoint of :func:`l_step` by plain iteration (quadratic worst case)."""
    _check_degree(n_max, d)
    _check_set(n_max, E)
    return _iterate(n_max, d, E)[0]


def stabilization_index(n_max: int, d: int, E: WeightSet) -> int:
    """Least ``k`` with ``L^(k+1)(E) = L^k(E)``."""
    _check_degree(n_max, d)
    _check_set(n_max, E)
    return _iterate(n_max, d, E)[1]


def l_bar_recursive(n_max: int, d: int, E: WeightSet) -> WeightSet:
    """Linear-time fixpoint by stripping both endpoints per level.

    On ``[a, b]`` with degree ``d`` and ``w = |E ∩ [a, b]|``: once ``w > d`` the
    endpoints join the closure and the problem recurses on ``[a+1, b-1]`` with
    degree ``d - 1``.  The recursion is unrolled into a loop.
    """
    _check_degree(n_max, d)
    _check_set(n_max, E)
    e = E.mask.tobytes()
    w = int(np.count_nonzero(E.mask))
    a, b = 0, n_max
    while True:
        if b == a:
            break
        if b == a + 1:
            if d == 0 and w > 0:
                return _fill(E, a, b, a, b)
            break
        if d == b - a or w <= d:
            break
        if d == 0:
            # w > 0 here: a nonempty set closes to the whole interval at degree 0
            return _fill(E, a, b, a, b)
        w -= e[a] + e[b]
        a, b, d = a + 1, b - 1, d - 1
    return _fill(E, a, b, a, a - 1)


def _fill(E: WeightSet, a: int, b: int, fa: int, fb: int) -> WeightSet:
    """``E`` with everything outside ``[a, b]`` set, plus ``[fa, fb]`` set."""
    if a == 0 and fb < fa:
        return E
    mask = E.mask.copy()
    mask[:a] = True
    mask[b + 1:] = True
    if fb >= fa:
        mask[fa:fb + 1] = True
    return WeightSet(E.n_max, mask)


def l_bar(n_max: int, d: int, E: WeightSet) -> WeightSet:
    return l_bar_recursive(n_max, d, E)


def l_step_on(a: int, b: int, d: int, E: WeightSet) -> WeightSet:
    """One filling step on the shifted interval ``[a, b]``; ``E`` lives in ``[0, N]``."""
    inner = l_step(b - a, d, E.shifted(a, b))
    return _embed(E, a, b, inner)


def l_bar_on(a: int, b: int, d: int, E: WeightSet) -> WeightSet:
    """Fixpoint on the shifted interval ``[a, b]``; points outside ``[a, b]`` pass through."""
    inner = l_bar_recursive(b - a, d, E.shifted(a, b))
    return _embed(E, a, b, inner)


def _embed(E: WeightSet, a: int, b: int, inner: WeightSet) -> WeightSet:
    mask = E.mask.copy()
    mask[a:b + 1] = inner.mask
    return WeightSet(E.n_max, mask)


@dataclass(frozen=True)
class AdmittingCertificate:
    d: int
    i: int | None
    witnessed: bool


def _window_counts(E: WeightSet) -> np.ndarray:
    return np.concatenate(([0], np.cumsum(E.mask, dtype=np.int64)))


def is_admitting_at(n_max: int, d: int, i: int, E: WeightSet) -> bool:
    """``E ∪ T_{N,i} ≠ [0, N]`` and ``|E \\ T_{N,i}| <= d - i``."""
    _check_set(n_max, E)
    if not 0 <= i <= d:
        return False
    if 2 * i > n_max:
        return False  # T_{N,i} is then all of [0, N]
    middle = int(np.count_nonzero(E.mask[i:n_max - i + 1]))
    return middle < n_max - 2 * i + 1 and middle <= d - i


def is_admitting(n_max: int, d: int, E: WeightSet) -> AdmittingCertificate:
    """Least ``i in [0, d]`` for which ``E`` is ``(d, i)``-admitting."""
    _check_degree(n_max, d)
    _check_set(n_max, E)
    prefix = _window_counts(E)
    for i in range(min(d, n_max // 2) + 1):
        middle = int(prefix[n_max - i + 1] - prefix[i])
        if middle < n_max - 2 * i + 1 and middle <= d - i:
            return AdmittingCertificate(d, i, True)
    return AdmittingCertificate(d, None, False)


def max_tail_index(E: WeightSet) -> int:
    """``max{i in [0, floor(N/2)] : T_{N,i} ⊆ E}``."""
    n_max = E.n_max
    m = E.mask
    i = 0
    while i < n_max // 2 and m[i] and m[n_max - i]:
        i += 1
    return i
