"""Finite dimensional representations of a bound quiver algebra.

A representation assigns a vector space dimension to each vertex and an exact
matrix to each arrow, shaped (target dim) x (source dim); arrows act on column
vectors, so a path acts by multiplying its arrow matrices last-traversed-first.
Morphisms are vertex-indexed matrices with commuting squares.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraError, Path
from .linalg import Matrix, Subspace, preimage_subspace


class RepError(ValueError):
    pass


class Rep:
    __slots__ = ("algebra", "dims", "maps", "_hash")

    def __init__(self, algebra, dims, maps, check=True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(algebra.vertices):
            raise RepError("dims length differs from vertex count")
        if any(d < 0 for d in self.dims):
            raise RepError("negative dimension")
        mp = {}
        for a in algebra.arrows:
            m = maps.get(a.name)
            ts = self.dims[algebra.vertex_index[a.target]]
            ss = self.dims[algebra.vertex_index[a.source]]
            if m is None:
                m = Matrix.zeros(algebra.field, ts, ss)
            if m.shape != (ts, ss):
                raise RepError(
                    f"arrow {a.name}: expected shape {(ts, ss)}, got {m.shape}"
                )
            if m.field != algebra.field:
                raise RepError("arrow matrix over the wrong field")
            mp[a.name] = m
        unknown = set(maps) - set(mp)
        if unknown:
            raise RepError(f"maps given for unknown arrows {sorted(unknown)}")
        self.maps = mp
        self._hash = None
        if check:
            self._check_relations()

    def _check_relations(self):
        f = self.algebra.field
        for rel in self.algebra.relations:
            ts = self.vertex_dim(rel.target)
            ss = self.vertex_dim(rel.source)
            acc = Matrix.zeros(f, ts, ss)
            for coeff, path in rel.terms:
                acc = acc + self.path_action(path).scale(coeff)
            if not acc.is_zero():
                raise RepError(f"relation violated: {rel!r}")

    def vertex_dim(self, vertex):
        return self.dims[self.algebra.vertex_index[str(vertex)]]

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0

    def path_action(self, path):
        """Matrix of the path acting source-vertex space -> target space."""
        if isinstance(path, (tuple, list)):
            path = self.algebra.path_from_names(path)
        m = Matrix.identity(self.algebra.field, self.vertex_dim(path.source))
        for name in path.arrows:
            m = self.maps[name] @ m
        return m

    def element_action(self, residue, source, target):
        """Action of a residue {basis path: scalar} between two vertices."""
        f = self.algebra.field
        acc = Matrix.zeros(f, self.vertex_dim(target), self.vertex_dim(source))
        for p, c in residue.items():
            if p.source == str(source) and p.target == str(target):
                acc = acc + self.path_action(p).scale(c)
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Rep)
            and self.algebra == other.algebra
            and self.dims == other.dims
            and self.maps == other.maps
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.dims, tuple(self.maps[a.name] for a in self.algebra.arrows))
            )
        return self._hash

    def __repr__(self):
        return f"Rep(dims {self.dims})"


class RepMorphism:
    __slots__ = ("dom", "cod", "mats")

    def __init__(self, dom, cod, mats, check=True):
        if dom.algebra != cod.algebra:
            raise RepError("morphism between reps of different algebras")
        self.dom = dom
        self.cod = cod
        self.mats = tuple(mats)
        if len(self.mats) != len(dom.algebra.vertices):
            raise RepError("one matrix per vertex required")
        for d_dim, c_dim, m in zip(dom.dims, cod.dims, self.mats):
            if m.shape != (c_dim, d_dim):
                raise RepError(f"vertex matrix shape {m.shape} != {(c_dim, d_dim)}")
        if check:
            self._check_commuting()

    def _check_commuting(self):
        alg = self.dom.algebra
        for a in alg.arrows:
            si = alg.vertex_index[a.source]
            ti = alg.vertex_index[a.target]
            lhs = self.cod.maps[a.name] @ self.mats[si]
            rhs = self.mats[ti] @ self.dom.maps[a.name]
            if lhs != rhs:
                raise RepError(f"square at arrow {a.name} does not commute")

    @classmethod
    def identity(cls, rep):
        f = rep.algebra.field
        return cls(rep, rep, [Matrix.identity(f, d) for d in rep.dims], check=False)

    @classmethod
    def zero(cls, dom, cod):
        f = dom.algebra.field
        return cls(
            dom, cod,
            [Matrix.zeros(f, c, d) for d, c in zip(dom.dims, cod.dims)],
            check=False,
        )

    def compose(self, other):
        """self o other (apply other first)."""
        if other.cod != self.dom:
            raise RepError("composition mismatch")
        return RepMorphism(
            other.dom, self.cod,
            [a @ b for a, b in zip(self.mats, other.mats)],
            check=False,
        )

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        if self.dom != other.dom or self.cod != other.cod:
            raise RepError("morphism sum shape mismatch")
        return RepMorphism(
            self.dom, self.cod,
            [a + b for a, b in zip(self.mats, other.mats)], check=False,
        )

    def __sub__(self, other):
        if self.dom != other.dom or self.cod != other.cod:
            raise RepError("morphism difference shape mismatch")
        return RepMorphism(
            self.dom, self.cod,
            [a - b for a, b in zip(self.mats, other.mats)], check=False,
        )

    def scale(self, c):
        return RepMorphism(
            self.dom, self.cod, [m.scale(c) for m in self.mats], check=False
        )

    def is_zero(self):
        return all(m.is_zero() for m in self.mats)

    def is_mono(self):
        return all(m.rank() == m.ncols for m in self.mats)

    def is_epi(self):
        return all(m.rank() == m.nrows for m in self.mats)

    def is_iso(self):
        return self.dom.dims == self.cod.dims and self.is_mono()

    def inverse(self):
        if not self.is_iso():
            raise RepError("not invertible")
        return RepMorphism(
            self.cod, self.dom, [m.inverse() for m in self.mats], check=False
        )

    def flat(self):
        """Row-major concatenation of vertex matrices, in vertex order."""
        out = []
        for m in self.mats:
            for row in m.rows:
                out.extend(row)
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, RepMorphism)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.mats == other.mats
        )

    def __hash__(self):
        return hash((hash(self.dom), hash(self.cod), self.mats))

    def __repr__(self):
        return f"RepMorphism({self.dom.dims} -> {self.cod.dims})"


def hom_flat_dim(dom, cod):
    return sum(c * d for d, c in zip(dom.dims, cod.dims))


def morphism_from_flat(dom, cod, vec, check=False):
    f = dom.algebra.field
    vec = list(vec)
    mats = []
    pos = 0
    for d, c in zip(dom.dims, cod.dims):
        rows = []
        for i in range(c):
            rows.append(vec[pos:pos + d])
            pos += d
        mats.append(Matrix(f, rows) if rows or d == 0 else Matrix.zeros(f, c, d))
    if pos != len(vec):
        raise RepError("flat vector length mismatch")
    return RepMorphism(dom, cod, mats, check=check)


_hom_cache = {}


def hom_basis(dom, cod):
    """Canonical basis of Hom(dom, cod) as a tuple of morphisms."""
    key = (dom, cod)
    hit = _hom_cache.get(key)
    if hit is not None:
        return hit
    alg = dom.algebra
    f = alg.field
    n_unknowns = hom_flat_dim(dom, cod)
    offsets = []
    pos = 0
    for d, c in zip(dom.dims, cod.dims):
        offsets.append(pos)
        pos += c * d
    rows = []
    for a in alg.arrows:
        si = alg.vertex_index[a.source]
        ti = alg.vertex_index[a.target]
        M = dom.maps[a.name]
        N = cod.maps[a.name]
        ds, dt = dom.dims[si], dom.dims[ti]
        cs, ct = cod.dims[si], cod.dims[ti]
        # condition: N @ f_s - f_t @ M = 0, entrywise (ct x ds)
        for i in range(ct):
            for j in range(ds):
                row = [f.zero] * n_unknowns
                for k in range(cs):
                    row[offsets[si] + k * ds + j] = f.add(
                        row[offsets[si] + k * ds + j], N[i, k]
                    )
                for l in range(dt):
                    idx = offsets[ti] + i * dt + l
                    row[idx] = f.sub(row[idx], M[l, j])
                rows.append(row)
    if n_unknowns == 0:
        basis = ()
    elif not rows:
        eye = Matrix.identity(f, n_unknowns)
        basis = tuple(
            morphism_from_flat(dom, cod, eye.col(j)) for j in range(n_unknowns)
        )
    else:
        null = Matrix(f, rows).nullspace_matrix()
        basis = tuple(
            morphism_from_flat(dom, cod, null.col(j)) for j in range(null.ncols)
        )
    if len(_hom_cache) > 4096:
        _hom_cache.clear()
    _hom_cache[key] = basis
    return basis


def hom_dim(dom, cod):
    return len(hom_basis(dom, cod))


# -- direct sums -------------------------------------------------------


@dataclass
class SumData:
    rep: Rep
    injections: tuple
    projections: tuple


def direct_sum(reps):
    reps = list(reps)
    if not reps:
        raise RepError("direct sum needs an algebra; pass at least a zero rep")
    alg = reps[0].algebra
    f = alg.field
    if any(r.algebra != alg for r in reps):
        raise RepError("direct sum across different algebras")
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(len(alg.vertices)))
    maps = {
        a.name: Matrix.block_diag(f, [r.maps[a.name] for r in reps])
        for a in alg.arrows
    }
    total = Rep(alg, dims, maps, check=False)
    injections = []
    projections = []
    for idx, r in enumerate(reps):
        inj_mats = []
        proj_mats = []
        for vi in range(len(alg.vertices)):
            before = sum(x.dims[vi] for x in reps[:idx])
            d = r.dims[vi]
            tot = dims[vi]
            inj = Matrix.zeros(f, tot, d)
            rows = [list(row) for row in inj.rows]
            for i in range(d):
                rows[before + i][i] = f.one
            inj_mats.append(Matrix(f, rows))
            prow = [[f.zero] * tot for _ in range(d)]
            for i in range(d):
                prow[i][before + i] = f.one
            proj_mats.append(Matrix(f, prow))
        injections.append(RepMorphism(r, total, inj_mats, check=False))
        projections.append(RepMorphism(total, r, proj_mats, check=False))
    return SumData(total, tuple(injections), tuple(projections))


def zero_rep(algebra):
    return Rep(algebra, [0] * len(algebra.vertices), {}, check=False)


def stack_morphisms_to_product(fs, target_sum: SumData):
    """Combine f_i: X -> Y_i into X -> (+) Y_i."""
    fs = list(fs)
    x = fs[0].dom
    acc = RepMorphism.zero(x, target_sum.rep)
    for f, inj in zip(fs, target_sum.injections):
        acc = acc + (inj @ f)
    return acc


def stack_morphisms_from_sum(fs, source_sum: SumData):
    """Combine f_i: X_i -> Y into (+) X_i -> Y."""
    fs = list(fs)
    y = fs[0].cod
    acc = RepMorphism.zero(source_sum.rep, y)
    for f, proj in zip(fs, source_sum.projections):
        acc = acc + (f @ proj)
    return acc


# -- subrepresentations ------------------------------------------------


class SubRep:
    """Vertexwise subspaces of an ambient rep, closed under the arrows."""

    __slots__ = ("ambient", "spaces")

    def __init__(self, ambient, spaces, check=True):
        self.ambient = ambient
        self.spaces = tuple(spaces)
        if len(self.spaces) != len(ambient.algebra.vertices):
            raise RepError("one subspace per vertex required")
        for d, s in zip(ambient.dims, self.spaces):
            if s.ambient != d:
                raise RepError("subspace ambient dimension mismatch")
        if check and not self._closed():
            raise RepError("subspaces not closed under the arrow action")

    def _closed(self):
        alg = self.ambient.algebra
        for a in alg.arrows:
            si = alg.vertex_index[a.source]
            ti = alg.vertex_index[a.target]
            img = self.ambient.maps[a.name] @ self.spaces[si].basis_matrix()
            for col in img.cols():
                if not self.spaces[ti].contains_vector(col):
                    return False
        return True

    @property
    def dims(self):
        return tuple(s.dim for s in self.spaces)

    @property
    def total_dim(self):
        return sum(s.dim for s in self.spaces)

    def contains(self, other):
        if other.ambient != self.ambient:
            raise RepError("subreps of different ambients")
        return all(a.contains(b) for a, b in zip(self.spaces, other.spaces))

    def add(self, other):
        if other.ambient != self.ambient:
            raise RepError("subreps of different ambients")
        return SubRep(
            self.ambient,
            [a.add(b) for a, b in zip(self.spaces, other.spaces)],
            check=False,
        )

    def intersect(self, other):
        if other.ambient != self.ambient:
            raise RepError("subreps of different ambients")
        return SubRep(
            self.ambient,
            [a.intersect(b) for a, b in zip(self.spaces, other.spaces)],
            check=False,
        )

    def to_rep(self):
        """(rep on the canonical bases, inclusion morphism)."""
        alg = self.ambient.algebra
        f = alg.field
        bases = [s.basis_matrix() for s in self.spaces]
        maps = {}
        for a in alg.arrows:
            si = alg.vertex_index[a.source]
            ti = alg.vertex_index[a.target]
            rhs = self.ambient.maps[a.name] @ bases[si]
            if bases[ti].ncols == 0:
                sol = Matrix.zeros(f, 0, bases[si].ncols)
            else:
                sol = bases[ti].solve(rhs)
                if sol is None:
                    raise RepError("subrep not closed (solve failed)")
            maps[a.name] = sol
        rep = Rep(alg, [s.dim for s in self.spaces], maps, check=False)
        incl = RepMorphism(rep, self.ambient, bases, check=False)
        return rep, incl

    @classmethod
    def zero(cls, ambient):
        f = ambient.algebra.field
        return cls(
            ambient, [Subspace.zero(f, d) for d in ambient.dims], check=False
        )

    @classmethod
    def full(cls, ambient):
        f = ambient.algebra.field
        return cls(
            ambient, [Subspace.full(f, d) for d in ambient.dims], check=False
        )

    @classmethod
    def from_vectors(cls, ambient, vectors_by_vertex):
        """Smallest subrep containing the given vectors (arrow closure)."""
        alg = ambient.algebra
        f = alg.field
        spans = [list(vs) for vs in vectors_by_vertex]
        changed = True
        while changed:
            changed = False
            spaces = [
                Subspace.from_columns(f, d, vs)
                for d, vs in zip(ambient.dims, spans)
            ]
            for a in alg.arrows:
                si = alg.vertex_index[a.source]
                ti = alg.vertex_index[a.target]
                img = ambient.maps[a.name] @ spaces[si].basis_matrix()
                for col in img.cols():
                    if not spaces[ti].contains_vector(col):
                        spans[ti].append(col)
                        changed = True
        return cls(
            ambient,
            [Subspace.from_columns(f, d, vs) for d, vs in zip(ambient.dims, spans)],
            check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, SubRep)
            and self.ambient == other.ambient
            and self.spaces == other.spaces
        )

    def __hash__(self):
        return hash((hash(self.ambient), self.spaces))

    def __repr__(self):
        return f"SubRep(dims {self.dims} of {self.ambient.dims})"


def kernel(f: RepMorphism):
    """(kernel rep, inclusion)."""
    sub = SubRep(
        f.dom, [m.nullspace() for m in f.mats], check=False
    )
    return sub.to_rep()


def kernel_subrep(f: RepMorphism):
    return SubRep(f.dom, [m.nullspace() for m in f.mats], check=False)


@dataclass
class ImageData:
    subrep: SubRep
    rep: Rep
    inclusion: RepMorphism   # rep -> codomain
    projection: RepMorphism  # domain -> rep (epi)


def image(f: RepMorphism):
    sub = SubRep(
        f.cod, [m.column_space() for m in f.mats], check=False
    )
    rep, incl = sub.to_rep()
    proj_mats = []
    for bm, m in zip((s.basis_matrix() for s in sub.spaces), f.mats):
        if bm.ncols == 0:
            proj_mats.append(Matrix.zeros(f.dom.algebra.field, 0, m.ncols))
        else:
            proj_mats.append(bm.solve(m))
    proj = RepMorphism(f.dom, rep, proj_mats, check=False)
    return ImageData(sub, rep, incl, proj)


def cokernel(f: RepMorphism):
    """(cokernel rep, projection), via echelon complements of the image."""
    alg = f.cod.algebra
    fld = alg.field
    proj_mats = []
    comp_bases = []
    for m, d in zip(f.mats, f.cod.dims):
        img = m.column_space()
        comp = img.complement_in(Subspace.full(fld, d))
        basis = Matrix.hstack([img.basis_matrix(), comp.basis_matrix()]) \
            if img.dim + comp.dim > 0 else Matrix(fld, [[] for _ in range(d)])
        comp_bases.append(comp.basis_matrix())
        if d == 0:
            proj_mats.append(Matrix.zeros(fld, 0, 0))
            continue
        inv = basis.inverse()
        proj_mats.append(inv.take_rows(range(img.dim, d)))
    qdims = [p.nrows for p in proj_mats]
    qmaps = {}
    for a in alg.arrows:
        si = alg.vertex_index[a.source]
        ti = alg.vertex_index[a.target]
        if qdims[si] == 0 or qdims[ti] == 0:
            qmaps[a.name] = Matrix.zeros(fld, qdims[ti], qdims[si])
        else:
            qmaps[a.name] = proj_mats[ti] @ f.cod.maps[a.name] @ comp_bases[si]
    q = Rep(alg, qdims, qmaps, check=False)
    proj = RepMorphism(f.cod, q, proj_mats, check=False)
    return q, proj


def quotient(rep: Rep, sub: SubRep):
    """(rep/sub, projection)."""
    if sub.ambient != rep:
        raise RepError("quotient by a subrep of a different ambient")
    srep, incl = sub.to_rep()
    return cokernel(incl)


def induced_on_quotient(proj: RepMorphism, f: RepMorphism):
    """g with g o proj = f, for an epi proj that kills ker f appropriately."""
    mats = []
    for p, m in zip(proj.mats, f.mats):
        sol = p.transpose().solve(m.transpose())
        if sol is None:
            raise RepError("map does not descend to the quotient")
        mats.append(sol.transpose())
    return RepMorphism(proj.cod, f.cod, mats)


def preimage(f: RepMorphism, sub: SubRep):
    """Preimage subrep of a subrep of the codomain."""
    if sub.ambient != f.cod:
        raise RepError("preimage of a subrep of the wrong ambient")
    return SubRep(
        f.dom,
        [preimage_subspace(m, s) for m, s in zip(f.mats, sub.spaces)],
        check=False,
    )


def image_subrep(f: RepMorphism):
    return SubRep(f.cod, [m.column_space() for m in f.mats], check=False)


# -- radical / socle / top ---------------------------------------------


def radical_subrep(m: Rep):
    """Sum of the arrow images (the Jacobson radical of the module)."""
    alg = m.algebra
    fld = alg.field
    gens = [[] for _ in alg.vertices]
    for a in alg.arrows:
        ti = alg.vertex_index[a.target]
        gens[ti].extend(m.maps[a.name].cols())
    return SubRep(
        m,
        [
            Subspace.from_columns(fld, d, g)
            for d, g in zip(m.dims, gens)
        ],
        check=False,
    )


def socle_subrep(m: Rep):
    """Largest semisimple subrep: vertexwise intersection of arrow kernels."""
    alg = m.algebra
    fld = alg.field
    spaces = [Subspace.full(fld, d) for d in m.dims]
    for a in alg.arrows:
        si = alg.vertex_index[a.source]
        spaces[si] = spaces[si].intersect(m.maps[a.name].nullspace())
    return SubRep(m, spaces, check=False)


def top(m: Rep):
    """(m / rad m, projection)."""
    return quotient(m, radical_subrep(m))


def socle_series_length(m: Rep):
    """Loewy length measured from the socle."""
    current = m
    steps = 0
    while not current.is_zero():
        soc = socle_subrep(current)
        current, _ = quotient(current, soc)
        steps += 1
    return steps


# -- simples, projectives, injectives ----------------------------------


def simple(algebra, vertex):
    v = str(vertex)
    if v not in algebra.vertex_index:
        raise RepError(f"unknown vertex {v!r}")
    dims = [0] * len(algebra.vertices)
    dims[algebra.vertex_index[v]] = 1
    return Rep(algebra, dims, {}, check=False)


def projective(algebra, vertex):
    """P(vertex): basis paths starting at the vertex, arrows post-compose."""
    v = str(vertex)
    if v not in algebra.vertex_index:
        raise RepError(f"unknown vertex {v!r}")
    f = algebra.field
    bases = {w: algebra.basis_between(v, w) for w in algebra.vertices}
    dims = [len(bases[w]) for w in algebra.vertices]
    maps = {}
    for a in algebra.arrows:
        src_paths = bases[a.source]
        tgt_paths = bases[a.target]
        tgt_index = {p: i for i, p in enumerate(tgt_paths)}
        rows = [[f.zero] * len(src_paths) for _ in range(len(tgt_paths))]
        arrow_path = Path((a.name,), a.source, a.target)
        for j, p in enumerate(src_paths):
            for q, c in algebra.reduce_path(p.then(arrow_path)).items():
                rows[tgt_index[q]][j] = f.add(rows[tgt_index[q]][j], c)
        maps[a.name] = Matrix(f, rows)
    return Rep(algebra, dims, maps, check=False)


def dual(m: Rep):
    """The dual rep over the opposite algebra (transposed arrow matrices)."""
    opp = m.algebra.opposite()
    return Rep(
        opp,
        m.dims,
        {a.name: m.maps[a.name].transpose() for a in m.algebra.arrows},
        check=False,
    )


def dual_map(f: RepMorphism):
    """Contravariant dual: dual(cod) -> dual(dom)."""
    return RepMorphism(
        dual(f.cod), dual(f.dom), [m.transpose() for m in f.mats], check=False
    )


def injective(algebra, vertex):
    """I(vertex) as the dual of the opposite projective."""
    return dual(projective(algebra.opposite(), vertex))


def is_semisimple(m: Rep):
    return all(m.maps[a.name].is_zero() for a in m.algebra.arrows)


# -- covers and envelopes ----------------------------------------------


class StandardProjective:
    """An ordered direct sum of indecomposable projectives with block slicing."""

    def __init__(self, algebra, vertices):
        self.algebra = algebra
        self.vertices = tuple(str(v) for v in vertices)
        self.summands = [projective(algebra, v) for v in self.vertices]
        if self.summands:
            self.sum = direct_sum(self.summands)
            self.rep = self.sum.rep
        else:
            self.sum = None
            self.rep = zero_rep(algebra)

    def injection(self, i):
        return self.sum.injections[i]

    def projection(self, i):
        return self.sum.projections[i]

    def block(self, f: RepMorphism, tgt_std, i, j):
        """Component P(self.vertices[j]) -> P(tgt_std.vertices[i]) of f."""
        return tgt_std.projection(i) @ f @ self.injection(j)


class StandardInjective:
    """An ordered direct sum of indecomposable injectives with block slicing."""

    def __init__(self, algebra, vertices):
        self.algebra = algebra
        self.vertices = tuple(str(v) for v in vertices)
        self.summands = [injective(algebra, v) for v in self.vertices]
        if self.summands:
            self.sum = direct_sum(self.summands)
            self.rep = self.sum.rep
        else:
            self.sum = None
            self.rep = zero_rep(algebra)

    def injection(self, i):
        return self.sum.injections[i]

    def projection(self, i):
        return self.sum.projections[i]


def _generator_morphism(m: Rep, vertex, column):
    """The morphism P(vertex) -> m sending the trivial path to the column."""
    alg = m.algebra
    f = alg.field
    p = projective(alg, vertex)
    mats = []
    for w in alg.vertices:
        paths = alg.basis_between(vertex, w)
        cols = []
        for path in paths:
            cols.append((m.path_action(path) @ column).col(0))
        wi = alg.vertex_index[w]
        if cols:
            mats.append(Matrix(f, list(zip(*cols))))
        else:
            mats.append(Matrix.zeros(f, m.dims[wi], 0))
    return RepMorphism(p, m, mats, check=False)


@dataclass
class CoverData:
    std: StandardProjective
    map: RepMorphism  # epi std.rep -> m

    @property
    def rep(self):
        return self.std.rep


def projective_cover(m: Rep):
    """Minimal projective cover built from a basis of the top."""
    alg = m.algebra
    fld = alg.field
    rad = radical_subrep(m)
    verts = []
    generators = []
    for wi, w in enumerate(alg.vertices):
        comp = rad.spaces[wi].complement_in(Subspace.full(fld, m.dims[wi]))
        for col in comp.basis_matrix().cols():
            verts.append(w)
            generators.append((w, Matrix.column(fld, col)))
    std = StandardProjective(alg, verts)
    if not verts:
        cover = RepMorphism.zero(std.rep, m)
        return CoverData(std, cover)
    comps = [
        _generator_morphism(m, w, col) for (w, col) in generators
    ]
    cover = stack_morphisms_from_sum(comps, std.sum)
    if not cover.is_epi():
        raise RepError("internal: projective cover is not surjective")
    return CoverData(std, cover)


def _functional_morphism(m: Rep, vertex, functional_row):
    """The morphism m -> I(vertex) given by a functional on m_vertex."""
    alg = m.algebra
    f = alg.field
    opp = alg.opposite()
    inj = injective(alg, vertex)
    mats = []
    for w in alg.vertices:
        wi = alg.vertex_index[w]
        op_paths = opp.basis_between(vertex, w)
        rows = []
        for op in op_paths:
            rev = op.arrows[::-1]
            if rev:
                act = m.path_action(alg.path_from_names(rev))
            else:
                act = Matrix.identity(f, m.dims[wi])
            rows.append((functional_row @ act).rows[0])
        if rows:
            mats.append(Matrix(f, rows))
        else:
            mats.append(Matrix.zeros(f, 0, m.dims[wi]))
    return RepMorphism(m, inj, mats, check=False)


@dataclass
class EnvelopeData:
    std: StandardInjective
    map: RepMorphism  # mono m -> std.rep

    @property
    def rep(self):
        return self.std.rep


def injective_envelope(m: Rep):
    """Minimal injective envelope built from a dual basis of the socle."""
    alg = m.algebra
    fld = alg.field
    soc = socle_subrep(m)
    verts = []
    functionals = []
    for wi, w in enumerate(alg.vertices):
        s = soc.spaces[wi]
        if s.dim == 0:
            continue
        comp = s.complement_in(Subspace.full(fld, m.dims[wi]))
        basis = Matrix.hstack([s.basis_matrix(), comp.basis_matrix()]) \
            if s.dim + comp.dim > 0 else None
        inv = basis.inverse()
        for i in range(s.dim):
            verts.append(w)
            functionals.append((w, inv.take_rows([i])))
    std = StandardInjective(alg, verts)
    if not verts:
        emb = RepMorphism.zero(m, std.rep)
        if not m.is_zero():
            raise RepError("internal: nonzero module with empty socle")
        return EnvelopeData(std, emb)
    comps = [_functional_morphism(m, w, row) for (w, row) in functionals]
    emb = stack_morphisms_to_product(comps, std.sum)
    if not emb.is_mono():
        raise RepError("internal: injective envelope map is not injective")
    return EnvelopeData(std, emb)


def is_projective(m: Rep):
    return projective_cover(m).rep.dims == m.dims


def is_injective(m: Rep):
    return injective_envelope(m).rep.dims == m.dims


# -- factorization solvers ---------------------------------------------


def _solve_morphism(dom, cod, extra_rows_fn):
    """Find a morphism dom->cod whose flat vector satisfies extra conditions.

    extra_rows_fn(builder) appends (row, rhs) pairs; rows are over the flat
    coordinate space of Hom(dom, cod).
    """
    alg = dom.algebra
    f = alg.field
    n = hom_flat_dim(dom, cod)
    offsets = []
    pos = 0
    for d, c in zip(dom.dims, cod.dims):
        offsets.append(pos)
        pos += c * d
    rows = []
    rhs = []
    for a in alg.arrows:
        si = alg.vertex_index[a.source]
        ti = alg.vertex_index[a.target]
        M = dom.maps[a.name]
        N = cod.maps[a.name]
        ds, dt = dom.dims[si], dom.dims[ti]
        ct = cod.dims[ti]
        cs = cod.dims[si]
        for i in range(ct):
            for j in range(ds):
                row = [f.zero] * n
                for k in range(cs):
                    row[offsets[si] + k * ds + j] = f.add(
                        row[offsets[si] + k * ds + j], N[i, k]
                    )
                for l in range(dt):
                    idx = offsets[ti] + i * dt + l
                    row[idx] = f.sub(row[idx], M[l, j])
                rows.append(row)
                rhs.append(f.zero)
    extra_rows_fn(offsets, rows, rhs)
    if n == 0:
        if any(not f.is_zero(v) for v in rhs):
            return None
        return RepMorphism.zero(dom, cod)
    a_mat = Matrix(f, rows) if rows else Matrix.zeros(f, 0, n)
    b_mat = Matrix.column(f, rhs) if rows else Matrix.zeros(f, 0, 1)
    sol = a_mat.solve(b_mat)
    if sol is None:
        return None
    return morphism_from_flat(dom, cod, sol.col(0), check=False)


def solve_right_factor(g: RepMorphism, h: RepMorphism):
    """phi with g o phi = h (phi: h.dom -> g.dom); None if impossible."""
    if g.cod != h.cod:
        raise RepError("codomain mismatch")
    dom, mid = h.dom, g.dom
    f = dom.algebra.field

    def extra(offsets, rows, rhs):
        for vi, (dd, md) in enumerate(zip(dom.dims, mid.dims)):
            G = g.mats[vi]
            H = h.mats[vi]
            for i in range(H.nrows):
                for j in range(dd):
                    row = [f.zero] * sum(
                        m * d for d, m in zip(dom.dims, mid.dims)
                    )
                    for k in range(md):
                        row[offsets[vi] + k * dd + j] = G[i, k]
                    rows.append(row)
                    rhs.append(H[i, j])

    return _solve_morphism(dom, mid, extra)


def solve_left_factor(e: RepMorphism, h: RepMorphism):
    """g with g o e = h (g: e.cod -> h.cod); None if impossible."""
    if e.dom != h.dom:
        raise RepError("domain mismatch")
    dom, cod = e.cod, h.cod
    f = dom.algebra.field

    def extra(offsets, rows, rhs):
        for vi, dd in enumerate(dom.dims):
            E = e.mats[vi]
            H = h.mats[vi]
            for i in range(H.nrows):
                for j in range(E.ncols):
                    row = [f.zero] * sum(
                        c * d for d, c in zip(dom.dims, cod.dims)
                    )
                    for k in range(dd):
                        row[offsets[vi] + i * dd + k] = E[k, j]
                    rows.append(row)
                    rhs.append(H[i, j])

    return _solve_morphism(dom, cod, extra)


def factors_through(alpha: RepMorphism, alpha_prime: RepMorphism):
    """phi with alpha o phi = alpha_prime, or None."""
    return solve_right_factor(alpha, alpha_prime)


class InjectivityError(RepError):
    pass


def extend_along_mono(e: RepMorphism, f: RepMorphism, check_injective=False):
    """g with g o e = f for a mono e into f's domain side.

    The codomain of f must be injective for this to be guaranteed; a None
    solution is reported as a violated precondition.
    """
    if not e.is_mono():
        raise RepError("extend_along_mono needs a mono")
    if check_injective and not is_injective(f.cod):
        raise InjectivityError("extension target is not injective")
    g = solve_left_factor(e, f)
    if g is None:
        raise InjectivityError(
            "no extension exists; the injectivity precondition fails"
        )
    return g


# -- short exact sequences ----------------------------------------------


@dataclass
class Ses:
    """0 -> left -> middle -> right -> 0 with validated exactness."""

    left: Rep
    middle: Rep
    right: Rep
    inj: RepMorphism
    surj: RepMorphism

    def __post_init__(self):
        if self.inj.dom != self.left or self.inj.cod != self.middle:
            raise RepError("ses: inj endpoints wrong")
        if self.surj.dom != self.middle or self.surj.cod != self.right:
            raise RepError("ses: surj endpoints wrong")
        if not self.inj.is_mono():
            raise RepError("ses: left map not mono")
        if not self.surj.is_epi():
            raise RepError("ses: right map not epi")
        if not (self.surj @ self.inj).is_zero():
            raise RepError("ses: composite not zero")
        if self.left.total_dim + self.right.total_dim != self.middle.total_dim:
            raise RepError("ses: dimension count fails")

    def is_split(self):
        return solve_right_factor(self.surj, RepMorphism.identity(self.right)) \
            is not None
