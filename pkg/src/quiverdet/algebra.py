"""Bound quiver algebras kQ/I with an explicit path basis.

Paths are stored in traversal order: ``Path(("a", "b"), src, tgt)`` walks arrow
``a`` first.  Algebra multiplication follows function composition, so
``multiply(p, q)`` is "apply q, then p" and is nonzero only when the target of
q meets the source of p.

Finite dimensionality is enforced operationally: the two-sided ideal spanned by
the relations is intersected with path spaces of growing length until some
length L has every path inside the ideal.  L is then the nilpotency index of
the arrow ideal and the basis is the echelon complement of the relation ideal
among paths shorter than L.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix


class AlgebraError(ValueError):
    pass


class NotFiniteDimensional(AlgebraError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        arrs = []
        for a in arrows:
            if isinstance(a, Arrow):
                arrs.append(a)
            else:
                name, src, tgt = a
                arrs.append(Arrow(str(name), str(src), str(tgt)))
        names = [a.name for a in arrs]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        for a in arrs:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise AlgebraError(f"arrow {a.name} uses unknown vertex")
        if set(names) & set(self.vertices):
            raise AlgebraError("arrow names must not collide with vertex names")
        self.arrows = tuple(arrs)
        self.arrow_by_name = {a.name: a for a in self.arrows}

    def reversed(self):
        return Quiver(
            self.vertices,
            [(a.name, a.target, a.source) for a in self.arrows],
        )

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arr})"


class Path:
    """A path of the quiver; ``arrows`` in traversal order, possibly empty."""

    __slots__ = ("arrows", "source", "target")

    def __init__(self, arrows, source, target):
        self.arrows = tuple(arrows)
        self.source = source
        self.target = target

    @classmethod
    def trivial(cls, vertex):
        return cls((), vertex, vertex)

    @classmethod
    def from_arrows(cls, quiver, arrow_names):
        arrow_names = tuple(arrow_names)
        if not arrow_names:
            raise AlgebraError("a nonempty arrow list is required here")
        arrs = []
        for nm in arrow_names:
            if nm not in quiver.arrow_by_name:
                raise AlgebraError(f"unknown arrow {nm!r}")
            arrs.append(quiver.arrow_by_name[nm])
        for prev, nxt in zip(arrs, arrs[1:]):
            if prev.target != nxt.source:
                raise AlgebraError(
                    f"arrows {prev.name} and {nxt.name} do not compose"
                )
        return cls(arrow_names, arrs[0].source, arrs[-1].target)

    @property
    def length(self):
        return len(self.arrows)

    def then(self, other):
        """Traversal concatenation: self first, then other."""
        if self.target != other.source:
            raise AlgebraError("paths do not concatenate")
        return Path(self.arrows + other.arrows, self.source, other.target)

    def reversed_key(self):
        return self.arrows[::-1]

    def sort_key(self):
        return (len(self.arrows), self.arrows)

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.arrows == other.arrows
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash((self.arrows, self.source, self.target))

    def __repr__(self):
        if not self.arrows:
            return f"e({self.source})"
        return "·".join(self.arrows)


class Relation:
    """A parallel linear combination of paths of length >= 2."""

    def __init__(self, quiver, terms, field):
        cleaned = []
        src = tgt = None
        for coeff, arrow_names in terms:
            coeff = field.coerce(coeff)
            if field.is_zero(coeff):
                continue
            path = Path.from_arrows(quiver, arrow_names)
            if path.length < 2:
                raise AlgebraError("relation terms must have length >= 2")
            if src is None:
                src, tgt = path.source, path.target
            elif (path.source, path.target) != (src, tgt):
                raise AlgebraError("relation terms must be parallel")
            cleaned.append((coeff, path))
        if not cleaned:
            raise AlgebraError("relation has no nonzero terms")
        self.terms = tuple(cleaned)
        self.source = src
        self.target = tgt

    @property
    def min_length(self):
        return min(p.length for _, p in self.terms)

    def reversed(self, quiver_rev, field):
        return Relation(
            quiver_rev,
            [(c, p.reversed_key()) for c, p in self.terms],
            field,
        )

    def __repr__(self):
        return " + ".join(f"{c}*{p!r}" for c, p in self.terms)


class BoundAlgebra:
    """Use :func:`build_algebra`; this constructor assumes prepared tables."""

    def __init__(self, quiver, field, relations, basis, reduction, nilpotency,
                 max_path_length):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(relations)
        self.basis = tuple(basis)  # Path objects, block-sorted
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self._reduction = reduction  # arbitrary path -> {basis path: scalar}
        self.nilpotency_index = nilpotency
        self.max_path_length = max_path_length
        self.dim = len(self.basis)
        self.vertices = quiver.vertices
        self.vertex_index = quiver.vertex_index
        self.arrows = quiver.arrows
        self._between = {}
        for p in self.basis:
            self._between.setdefault((p.source, p.target), []).append(p)
        self._opposite = None
        self._mult = None

    # -- path calculus --------------------------------------------------

    def basis_between(self, source, target):
        """Basis paths from source to target, shortest first."""
        return tuple(self._between.get((str(source), str(target)), ()))

    def reduce_path(self, path):
        """Residue of a path as {basis path: scalar}."""
        if path.length >= self.nilpotency_index:
            return {}
        try:
            return self._reduction[path]
        except KeyError:
            raise AlgebraError(f"path {path!r} does not belong to this quiver")

    def reduce_concat(self, residue, path):
        """Residue of (residue · then · path), linearly extended."""
        f = self.field
        out = {}
        for p, c in residue.items():
            if p.target != path.source:
                continue
            for q, d in self.reduce_path(p.then(path)).items():
                v = f.add(out.get(q, f.zero), f.mul(c, d))
                if f.is_zero(v):
                    out.pop(q, None)
                else:
                    out[q] = v
        return out

    def multiply(self, p, q):
        """Product p*q in function-composition order (q acts first)."""
        if q.target != p.source:
            return {}
        return self.reduce_path(q.then(p))

    def multiplication_table(self):
        """Structure constants {(i, j): {k: scalar}} for basis[i] * basis[j]."""
        if self._mult is None:
            table = {}
            for i, p in enumerate(self.basis):
                for j, q in enumerate(self.basis):
                    prod = self.multiply(p, q)
                    if prod:
                        table[(i, j)] = {
                            self.basis_index[r]: c for r, c in prod.items()
                        }
            self._mult = table
        return self._mult

    def opposite(self):
        """The opposite algebra; double opposite returns this object."""
        if self._opposite is None:
            qrev = self.quiver.reversed()
            rels = [r.reversed(qrev, self.field) for r in self.relations]
            opp = build_algebra(
                qrev, rels, self.field, max_path_length=self.max_path_length
            )
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def path_from_names(self, arrow_names, at_vertex=None):
        names = tuple(arrow_names)
        if not names:
            if at_vertex is None:
                raise AlgebraError("trivial path needs a vertex")
            v = str(at_vertex)
            if v not in self.vertex_index:
                raise AlgebraError(f"unknown vertex {v!r}")
            return Path.trivial(v)
        return Path.from_arrows(self.quiver, names)

    def __eq__(self, other):
        return (
            isinstance(other, BoundAlgebra)
            and self.quiver == other.quiver
            and self.field == other.field
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.quiver, self.field, self.dim))

    def __repr__(self):
        return (
            f"BoundAlgebra(dim {self.dim}, nilpotency {self.nilpotency_index}, "
            f"{len(self.quiver.arrows)} arrows over {self.field!r})"
        )


def _paths_up_to(quiver, max_len):
    """Lists of paths grouped by length, 0..max_len."""
    by_len = [[Path.trivial(v) for v in quiver.vertices]]
    out_arrows = {}
    for a in quiver.arrows:
        out_arrows.setdefault(a.source, []).append(a)
    for ln in range(1, max_len + 1):
        nxt = []
        for p in by_len[ln - 1]:
            for a in out_arrows.get(p.target, ()):
                nxt.append(Path(p.arrows + (a.name,), p.source, a.target))
        by_len.append(nxt)
    return by_len


def _ideal_rows_for_block(field, relations, paths_by_len, block_paths, index_in_block,
                          cutoff):
    """Span rows of the relation ideal inside one (source, target) block.

    Each generator is u · r · v truncated at the cutoff length (terms longer
    than the cutoff are legitimately zero there).
    """
    rows = []
    seen = set()
    for rel in relations:
        for lu in range(0, cutoff - rel.min_length + 1):
            for u in paths_by_len[lu]:
                if u.target != rel.source:
                    continue
                max_lv = cutoff - lu - rel.min_length
                for lv in range(0, max_lv + 1):
                    for v in paths_by_len[lv]:
                        if v.source != rel.target:
                            continue
                        row = [field.zero] * len(block_paths)
                        support = []
                        for coeff, p in rel.terms:
                            w = u.then(p).then(v)
                            if w.length > cutoff:
                                continue
                            j = index_in_block[w]
                            row[j] = field.add(row[j], coeff)
                            support.append(j)
                        if support:
                            key = tuple(row)
                            if key not in seen:
                                seen.add(key)
                                rows.append(row)
    return rows


def build_algebra(quiver, relations, field, max_path_length=32):
    """Construct kQ/I, detecting the arrow-ideal nilpotency index.

    Raises NotFiniteDimensional when no length within the bound has all of its
    paths inside the relation ideal.
    """
    if max_path_length < 1:
        raise AlgebraError("max_path_length must be at least 1")
    rels = []
    for r in relations:
        if isinstance(r, Relation):
            rels.append(r)
        else:
            rels.append(Relation(quiver, r, field))
    paths_by_len = _paths_up_to(quiver, max_path_length + 1)

    nilpotency = None
    for cand in range(1, max_path_length + 2):
        level = paths_by_len[cand] if cand < len(paths_by_len) else []
        if not level:
            nilpotency = cand
            break
        blocks = {}
        for p in level:
            blocks.setdefault((p.source, p.target), []).append(p)
        ok = True
        for (s, t), tops in blocks.items():
            block_paths = [
                p
                for ln in range(cand + 1)
                for p in paths_by_len[ln]
                if p.source == s and p.target == t
            ]
            block_paths.sort(key=Path.sort_key)
            index_in_block = {p: i for i, p in enumerate(block_paths)}
            rows = _ideal_rows_for_block(
                field, rels, paths_by_len, block_paths, index_in_block, cand
            )
            if not rows:
                ok = False
                break
            mat = Matrix(field, rows)
            rank, R, pivots = mat.rref()
            pivot_set = set(pivots)
            for p in tops:
                if index_in_block[p] not in pivot_set:
                    ok = False
                    break
                # pivot membership is necessary, not sufficient; check residue
            if not ok:
                break
            # verify each top path reduces to zero against the echelon rows
            for p in tops:
                vec = [field.zero] * len(block_paths)
                vec[index_in_block[p]] = field.one
                for i in range(rank):
                    piv = pivots[i]
                    c = vec[piv]
                    if not field.is_zero(c):
                        vec = [
                            field.sub(a, field.mul(c, b))
                            for a, b in zip(vec, R.rows[i])
                        ]
                if any(not field.is_zero(v) for v in vec):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            nilpotency = cand
            break
    if nilpotency is None:
        raise NotFiniteDimensional(
            f"no nilpotency index within max_path_length={max_path_length}; "
            "the algebra is not finite dimensional within the bound"
        )

    # echelonize the ideal among paths shorter than the nilpotency index
    cutoff = nilpotency - 1
    blocks = {}
    for ln in range(cutoff + 1):
        for p in paths_by_len[ln]:
            blocks.setdefault((p.source, p.target), []).append(p)
    basis = []
    reduction = {}
    for (s, t) in sorted(blocks, key=lambda st: (quiver.vertex_index[st[0]],
                                                 quiver.vertex_index[st[1]])):
        block_paths = sorted(blocks[(s, t)], key=Path.sort_key)
        index_in_block = {p: i for i, p in enumerate(block_paths)}
        rows = _ideal_rows_for_block(
            field, rels, paths_by_len, block_paths, index_in_block, cutoff
        )
        if rows:
            rank, R, pivots = Matrix(field, rows).rref()
        else:
            rank, R, pivots = 0, None, ()
        pivot_set = set(pivots)
        block_basis = [p for i, p in enumerate(block_paths) if i not in pivot_set]
        basis.extend(block_basis)
        for i, p in enumerate(block_paths):
            if i not in pivot_set:
                reduction[p] = {p: field.one}
        for r_i, piv in enumerate(pivots):
            res = {}
            for j, q in enumerate(block_paths):
                if j in pivot_set or j == piv:
                    continue
                c = R.rows[r_i][j]
                if not field.is_zero(c):
                    res[q] = field.neg(c)
            reduction[block_paths[piv]] = res

    basis.sort(key=lambda p: (
        quiver.vertex_index[p.source],
        quiver.vertex_index[p.target],
        p.sort_key(),
    ))
    alg = BoundAlgebra(
        quiver, field, rels, basis, reduction, nilpotency, max_path_length
    )
    return alg
