"""Dense exact matrices and canonical subspaces.

Everything is computed over a field object from :mod:`quiverdet.fields`.
Matrices are immutable (tuples of tuples) and hashable so reps and morphisms
built on top of them can be cached.  Subspaces are stored through the reduced
row echelon form of their generator transpose, which makes equality of
subspaces a tuple comparison.
"""
from __future__ import annotations


class LinAlgError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows", "_rref")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise LinAlgError("ragged rows")
        else:
            width = 0
        self.field = field
        self.nrows = len(rows)
        self.ncols = width
        self.rows = rows
        self._rref = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, [[field.coerce(v) for v in r] for r in rows])

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, field, entries):
        return cls(field, [[v] for v in entries])

    @classmethod
    def hstack(cls, mats):
        mats = list(mats)
        if not mats:
            raise LinAlgError("hstack of nothing")
        n = mats[0].nrows
        if any(m.nrows != n for m in mats):
            raise LinAlgError("hstack: row counts differ")
        rows = [sum((m.rows[i] for m in mats), ()) for i in range(n)]
        return cls(mats[0].field, rows)

    @classmethod
    def vstack(cls, mats):
        mats = list(mats)
        if not mats:
            raise LinAlgError("vstack of nothing")
        w = mats[0].ncols
        if any(m.ncols != w for m in mats):
            raise LinAlgError("vstack: column counts differ")
        rows = []
        for m in mats:
            rows.extend(m.rows)
        return cls(mats[0].field, rows)

    @classmethod
    def block_diag(cls, field, mats):
        mats = list(mats)
        nr = sum(m.nrows for m in mats)
        nc = sum(m.ncols for m in mats)
        out = [[field.zero] * nc for _ in range(nr)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.nrows):
                row = out[r0 + i]
                for j in range(m.ncols):
                    row[c0 + j] = m.rows[i][j]
            r0 += m.nrows
            c0 += m.ncols
        return cls(field, out)

    # -- basics -------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(v) for v in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    def is_zero(self):
        fz = self.field.is_zero
        return all(fz(v) for r in self.rows for v in r)

    def __add__(self, other):
        self._compat(other, same_shape=True)
        add = self.field.add
        return Matrix(
            self.field,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        self._compat(other, same_shape=True)
        sub = self.field.sub
        return Matrix(
            self.field,
            [
                [sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        neg = self.field.neg
        return Matrix(self.field, [[neg(v) for v in r] for r in self.rows])

    def scale(self, c):
        mul = self.field.mul
        c = self.field.coerce(c)
        return Matrix(self.field, [[mul(c, v) for v in r] for r in self.rows])

    def __matmul__(self, other):
        self._compat(other)
        if self.ncols != other.nrows:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero
        ocols = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            new = []
            for col in ocols:
                acc = zero
                for a, b in zip(row, col):
                    acc = add(acc, mul(a, b))
                new.append(acc)
            out.append(new)
        if not ocols:
            out = [[] for _ in range(self.nrows)]
        return Matrix(f, out)

    def transpose(self):
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [[] for _ in range(self.ncols)])

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def take_cols(self, indices):
        return Matrix(self.field, [[r[j] for j in indices] for r in self.rows])

    def take_rows(self, indices):
        return Matrix(self.field, [self.rows[i] for i in indices])

    def _compat(self, other, same_shape=False):
        if self.field != other.field:
            raise LinAlgError("field mismatch")
        if same_shape and self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- elimination ---------------------------------------------------

    def rref(self):
        """Reduced row echelon form: ``(rank, rref matrix, pivot columns)``."""
        if self._rref is not None:
            return self._rref
        f = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for col in range(self.ncols):
            sel = None
            for i in range(rank, len(rows)):
                if not f.is_zero(rows[i][col]):
                    sel = i
                    break
            if sel is None:
                continue
            rows[rank], rows[sel] = rows[sel], rows[rank]
            inv = f.inv(rows[rank][col])
            rows[rank] = [f.mul(inv, v) for v in rows[rank]]
            for i in range(len(rows)):
                if i != rank and not f.is_zero(rows[i][col]):
                    c = rows[i][col]
                    rows[i] = [
                        f.sub(a, f.mul(c, b)) for a, b in zip(rows[i], rows[rank])
                    ]
            pivots.append(col)
            rank += 1
            if rank == len(rows):
                break
        self._rref = (rank, Matrix(f, rows), tuple(pivots))
        return self._rref

    def rank(self):
        return self.rref()[0]

    def nullspace_matrix(self):
        """Columns form the canonical (RREF back-substitution) kernel basis."""
        f = self.field
        rank, R, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        cols = []
        for fc in free:
            vec = [f.zero] * self.ncols
            vec[fc] = f.one
            for i, pc in enumerate(pivots):
                vec[pc] = f.neg(R.rows[i][fc])
            cols.append(vec)
        if not cols:
            return Matrix(f, [[] for _ in range(self.ncols)])
        return Matrix(f, list(zip(*cols)))

    def solve(self, rhs):
        """A particular solution X of ``self @ X = rhs`` or None."""
        self._compat(rhs)
        if rhs.nrows != self.nrows:
            raise LinAlgError("solve: row count mismatch")
        f = self.field
        aug = Matrix.hstack([self, rhs])
        rank, R, pivots = aug.rref()
        for pc in pivots:
            if pc >= self.ncols:
                return None
        out = [[f.zero] * rhs.ncols for _ in range(self.ncols)]
        for i, pc in enumerate(pivots):
            for j in range(rhs.ncols):
                out[pc][j] = R.rows[i][self.ncols + j]
        return Matrix(f, out)

    def inverse(self):
        if self.nrows != self.ncols:
            raise LinAlgError("inverse of a non-square matrix")
        sol = self.solve(Matrix.identity(self.field, self.nrows))
        if sol is None or (self @ sol) != Matrix.identity(self.field, self.nrows):
            return None
        return sol

    def column_space(self):
        return Subspace.from_columns(self.field, self.nrows, self.cols())

    def nullspace(self):
        return Subspace.from_columns(
            self.field, self.ncols, self.nullspace_matrix().cols()
        )


def solve_all(a, rhs):
    """All solutions of ``a @ x = rhs``: ``(particular, nullspace)`` or None."""
    part = a.solve(rhs)
    if part is None:
        return None
    return part, a.nullspace()


class Subspace:
    """A subspace of k^n held by its canonical echelon basis.

    The stored basis rows are the nonzero rows of the RREF of the generator
    transpose, so two Subspace objects are equal iff they agree setwise.
    """

    __slots__ = ("field", "ambient", "basis_rows")

    def __init__(self, field, ambient, basis_rows):
        self.field = field
        self.ambient = ambient
        self.basis_rows = tuple(tuple(r) for r in basis_rows)

    @classmethod
    def from_columns(cls, field, ambient, columns):
        columns = [tuple(c) for c in columns]
        if any(len(c) != ambient for c in columns):
            raise LinAlgError("generator length differs from ambient dimension")
        if not columns:
            return cls(field, ambient, ())
        m = Matrix(field, columns)  # generators as rows
        rank, R, _ = m.rref()
        return cls(field, ambient, R.rows[:rank])

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field, ambient):
        return cls.from_columns(
            field, ambient, Matrix.identity(field, ambient).cols()
        )

    @property
    def dim(self):
        return len(self.basis_rows)

    def basis_matrix(self):
        """ambient x dim matrix whose columns are the canonical basis."""
        if not self.basis_rows:
            return Matrix(self.field, [[] for _ in range(self.ambient)])
        return Matrix(self.field, self.basis_rows).transpose()

    def contains_vector(self, vec):
        vec = tuple(vec)
        if len(vec) != self.ambient:
            raise LinAlgError("vector length differs from ambient dimension")
        if all(self.field.is_zero(v) for v in vec):
            return True
        if not self.basis_rows:
            return False
        return self.basis_matrix().solve(Matrix.column(self.field, vec)) is not None

    def contains(self, other):
        self._check(other)
        return all(self.contains_vector(r) for r in other.basis_rows)

    def add(self, other):
        self._check(other)
        return Subspace.from_columns(
            self.field, self.ambient, list(self.basis_rows) + list(other.basis_rows)
        )

    def intersect(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        a = self.basis_matrix()
        b = other.basis_matrix()
        null = Matrix.hstack([a, b]).nullspace_matrix()
        coeffs = null.take_rows(range(a.ncols))
        return (a @ coeffs).column_space()

    def complement_in(self, other):
        """An echelon complement of self inside other (self must lie in other).

        Deterministic: extends the basis of self greedily by the canonical
        basis vectors of other.
        """
        self._check(other)
        if not other.contains(self):
            raise LinAlgError("complement_in: first subspace not inside second")
        chosen = []
        current = list(self.basis_rows)
        rank = len(current)
        for cand in other.basis_rows:
            trial = Matrix(self.field, current + [cand])
            if trial.rank() > rank:
                current.append(cand)
                chosen.append(cand)
                rank += 1
        return Subspace.from_columns(self.field, self.ambient, chosen)

    def _check(self, other):
        if self.field != other.field or self.ambient != other.ambient:
            raise LinAlgError("subspace ambient mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis_rows == other.basis_rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis_rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"


def preimage_subspace(m, target):
    """{v : m @ v in target} as a canonical subspace of the domain."""
    if m.nrows != target.ambient:
        raise LinAlgError("preimage: codomain mismatch")
    if target.dim == 0:
        return m.nullspace()
    stacked = Matrix.hstack([m, target.basis_matrix()])
    null = stacked.nullspace_matrix()
    coords = null.take_rows(range(m.ncols))
    return Subspace.from_columns(m.field, m.ncols, coords.cols())


def enumerate_subspaces(field, ambient, dim=None):
    """All subspaces of F_p^ambient (optionally of one dimension).

    Enumerates reduced-echelon bases: pivot column choices then free entries.
    Only available over prime fields.
    """
    if field.kind != "prime-field":
        raise LinAlgError("subspace enumeration needs a finite field")
    from itertools import combinations, product

    dims = range(ambient + 1) if dim is None else [dim]
    out = []
    for d in dims:
        if d == 0:
            out.append(Subspace.zero(field, ambient))
            continue
        for pivots in combinations(range(ambient), d):
            free_slots = [
                (i, col)
                for i in range(d)
                for col in range(pivots[i] + 1, ambient)
                if col not in pivots
            ]
            for values in product(list(field.elements()), repeat=len(free_slots)):
                rows = [[field.zero] * ambient for _ in range(d)]
                for i, p in enumerate(pivots):
                    rows[i][p] = field.one
                for (i, col), v in zip(free_slots, values):
                    rows[i][col] = v
                out.append(Subspace(field, ambient, rows))
    return out
