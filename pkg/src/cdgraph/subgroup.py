"""Subgroups of an enumerated :class:`PermGroup`, stored as boolean masks.

A mask is indexed by the parent's element indices, so intersections and
containment tests are plain array operations.  Generating sets are kept
when known and rebuilt greedily otherwise.
"""

from __future__ import annotations

import numpy as np

from .perm import PermGroup, Permutation


class Subgroup:
    __slots__ = ("parent", "mask", "_gens", "_group", "_indices")

    def __init__(self, parent: PermGroup, mask: np.ndarray, gens=None):
        self.parent = parent
        self.mask = mask
        self._gens = None if gens is None else np.unique(np.asarray(gens, dtype=np.intp))
        self._group: PermGroup | None = None
        self._indices: np.ndarray | None = None

    @property
    def order(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._indices = np.flatnonzero(self.mask)
        return self._indices

    @property
    def gens(self) -> np.ndarray:
        if self._gens is None:
            self._gens = _greedy_generators(self)
        return self._gens

    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, i) -> bool:
        return bool(self.mask[int(i)])

    def __le__(self, other: Subgroup) -> bool:
        return not np.any(self.mask & ~other.mask)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash((id(self.parent), self.order, self.indices[:8].tobytes()))

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def sort_key(self):
        return (self.order, tuple(self.indices.tolist()))

    def as_group(self, name: str | None = None) -> PermGroup:
        """The subgroup as a standalone group; element ``k`` is parent index ``indices[k]``."""
        if self._group is None:
            gens = [Permutation(r) for r in self.parent.array[self.gens].tolist()]
            self._group = PermGroup(self.parent.degree, gens, name=name,
                                    _elements=self.parent.array[self.mask])
        return self._group

    def restrict(self, other: Subgroup) -> Subgroup:
        """``other`` (a subgroup of this one) expressed inside :meth:`as_group`."""
        g = self.as_group()
        return Subgroup(g, other.mask[self.mask].copy())

    def lift(self, child: Subgroup) -> Subgroup:
        """Inverse of :meth:`restrict`."""
        mask = np.zeros_like(self.mask)
        mask[self.indices[child.mask]] = True
        gens = None if child._gens is None else self.indices[child._gens]
        return Subgroup(self.parent, mask, gens)


def trivial(g: PermGroup) -> Subgroup:
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    return Subgroup(g, mask, [])


def whole(g: PermGroup) -> Subgroup:
    return Subgroup(g, np.ones(g.order, dtype=bool), g.generator_indices)


def generate(g: PermGroup, gens, start: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by element indices ``gens`` (and ``start``, if given)."""
    gens = np.asarray(gens, dtype=np.intp).ravel()
    if start is not None:
        if np.all(start.mask[gens]):
            return start
        mask = start.mask.copy()
        all_gens = np.unique(np.concatenate([start.gens, gens]))
        frontier = np.flatnonzero(mask)
    else:
        mask = np.zeros(g.order, dtype=bool)
        mask[0] = True
        all_gens = np.unique(gens)
        frontier = np.array([0], dtype=np.intp)
    all_gens = all_gens[all_gens != 0]
    if all_gens.size == 0:
        return Subgroup(g, mask, all_gens)
    while frontier.size:
        prods = g.mul(frontier[:, None], all_gens[None, :]).ravel()
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return Subgroup(g, mask, all_gens)


def _greedy_generators(s: Subgroup) -> np.ndarray:
    g = s.parent
    cur = trivial(g)
    target = s.order
    gens: list[int] = []
    while cur.order < target:
        missing = np.flatnonzero(s.mask & ~cur.mask)
        x = int(missing[-1])
        gens.append(x)
        cur = generate(g, [x], start=cur)
    return np.array(gens, dtype=np.intp)


def is_normal(g: PermGroup, s: Subgroup) -> bool:
    gens = s.gens
    if gens.size == 0:
        return True
    return all(np.all(s.mask[g.conj(gens, int(x))]) for x in g.generator_indices)


def normal_closure(g: PermGroup, elems, start: Subgroup | None = None) -> Subgroup:
    s = generate(g, elems, start=start)
    while True:
        missing = []
        for x in g.generator_indices:
            c = g.conj(s.gens, int(x))
            missing.extend(c[~s.mask[c]].tolist())
        if not missing:
            return s
        s = generate(g, missing, start=s)


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup(a.parent, a.mask & b.mask)


def join(g: PermGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    if b <= a:
        return a
    if a <= b:
        return b
    return generate(g, b.gens, start=a)


def commutator_indices(g: PermGroup, a, b) -> np.ndarray:
    """Indices of ``[a, b] = a^-1 b^-1 a b`` (broadcasting)."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp))
    return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))


def commutator(g: PermGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    """``[A, B]`` for normal subgroups ``A`` and ``B`` of ``g``."""
    if a.gens.size == 0 or b.gens.size == 0:
        return trivial(g)
    comms = commutator_indices(g, a.gens[:, None], b.gens[None, :]).ravel()
    return normal_closure(g, comms)


def conjugate(g: PermGroup, s: Subgroup, x: int) -> Subgroup:
    """``x^-1 S x``."""
    mask = np.zeros_like(s.mask)
    mask[g.conj(s.indices, x)] = True
    return Subgroup(g, mask, g.conj(s.gens, x) if s._gens is not None else None)


def core(g: PermGroup, s: Subgroup) -> Subgroup:
    """Largest normal subgroup of ``g`` contained in ``s``."""
    cur = s
    while True:
        mask = cur.mask.copy()
        for x in g.generator_indices:
            mask &= conjugate(g, cur, int(x)).mask
        if np.array_equal(mask, cur.mask):
            return cur
        cur = Subgroup(g, mask)


def centralizer_mask(g: PermGroup, elems) -> np.ndarray:
    """Elements of ``g`` commuting with every element index in ``elems``."""
    arr = g.array
    mask = np.ones(g.order, dtype=bool)
    for e in np.asarray(elems, dtype=np.intp).ravel():
        r = arr[e]
        for s in range(0, g.order, 1 << 15):
            block = arr[s:s + (1 << 15)]
            # e o x versus x o e
            mask[s:s + (1 << 15)] &= np.all(r[block] == block[:, r], axis=1)
    return mask
