"""Duality, transpose, Nakayama transfer, AR translates and Ext groups.

Everything is driven by two mechanical primitives: morphisms between
indecomposable projectives are spanned by right multiplications with basis
paths, and injectives are duals of opposite projectives.  The Nakayama functor
re-reads path coefficients of a map between projectives as a map between the
matching injectives; its inverse reverses the reading.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Path
from .linalg import Matrix, Subspace
from .modules import (
    CoverData,
    EnvelopeData,
    Rep,
    RepError,
    RepMorphism,
    StandardInjective,
    StandardProjective,
    cokernel,
    direct_sum,
    dual,
    dual_map,
    hom_basis,
    hom_flat_dim,
    injective_envelope,
    kernel,
    morphism_from_flat,
    projective,
    projective_cover,
    quotient,
    socle_subrep,
    solve_right_factor,
    stack_morphisms_from_sum,
    zero_rep,
)


def path_right_multiplication(algebra, path, coeff=None):
    """rho_p: P(target p) -> P(source p), u |-> u then p.

    For p from x to y this is the morphism P(y) -> P(x) determined by sending
    the trivial path of P(y) to the residue of p inside P(x).
    """
    f = algebra.field
    x, y = path.source, path.target
    py = projective(algebra, y)
    px = projective(algebra, x)
    mats = []
    for w in algebra.vertices:
        cols_paths = algebra.basis_between(y, w)
        rows_paths = algebra.basis_between(x, w)
        row_index = {p: i for i, p in enumerate(rows_paths)}
        rows = [[f.zero] * len(cols_paths) for _ in rows_paths]
        for j, u in enumerate(cols_paths):
            for q, c in algebra.reduce_path(path.then(u)).items():
                rows[row_index[q]][j] = f.add(rows[row_index[q]][j], c)
        mats.append(Matrix(f, rows))
    m = RepMorphism(py, px, mats, check=False)
    if coeff is not None:
        m = m.scale(coeff)
    return m


def projective_hom_coefficients(algebra, f: RepMorphism, src_vertex, tgt_vertex):
    """Coefficients of f: P(src) -> P(tgt) over {rho_p : p in basis(tgt, src)}.

    Read off the image of the trivial path: the column of f at the source
    vertex indexed by the trivial path gives the coefficients directly.
    """
    paths = algebra.basis_between(tgt_vertex, src_vertex)
    vi = algebra.vertex_index[src_vertex]
    col = f.mats[vi].col(0) if f.mats[vi].ncols else ()
    # trivial path is index 0 of basis_between(src, src) by the length ordering
    rows_paths = algebra.basis_between(tgt_vertex, src_vertex)
    assert rows_paths == paths
    return list(zip(paths, col))


def injective_hom_from_path(algebra, path, coeff=None):
    """iota_p: I(target p) -> I(source p), the Nakayama image of rho_p."""
    opp = algebra.opposite()
    rev = path.arrows[::-1]
    if rev:
        op_path = opp.path_from_names(rev)
        residue = opp.reduce_path(op_path)
    else:
        op_path = Path.trivial(path.source)
        residue = opp.reduce_path(op_path)
    f = algebra.field
    acc = None
    for q, c in residue.items():
        piece = dual_map(path_right_multiplication(opp, q)).scale(c)
        acc = piece if acc is None else acc + piece
    if acc is None:
        y, x = path.target, path.source
        from .modules import injective

        acc = RepMorphism.zero(injective(algebra, y), injective(algebra, x))
    if coeff is not None:
        acc = acc.scale(coeff)
    return acc


@dataclass
class ProjPresentation:
    """Minimal presentation p1 --delta--> p0 --cover--> m -> 0."""

    module: Rep
    p0: StandardProjective
    cover: RepMorphism
    omega: Rep                 # kernel of the cover
    omega_inclusion: RepMorphism
    p1: StandardProjective
    omega_cover: RepMorphism   # p1 -> omega
    delta: RepMorphism         # p1 -> p0


def minimal_projective_presentation(m: Rep) -> ProjPresentation:
    c0 = projective_cover(m)
    om, incl = kernel(c0.map)
    c1 = projective_cover(om)
    delta = incl @ c1.map
    return ProjPresentation(
        module=m,
        p0=c0.std,
        cover=c0.map,
        omega=om,
        omega_inclusion=incl,
        p1=c1.std,
        omega_cover=c1.map,
        delta=delta,
    )


@dataclass
class InjCopresentation:
    """Minimal copresentation 0 -> m --embed--> i0 --theta--> i1."""

    module: Rep
    i0: StandardInjective
    embed: RepMorphism
    comega: Rep                # cokernel of the embedding
    comega_projection: RepMorphism
    i1: StandardInjective
    comega_embed: RepMorphism  # comega -> i1
    theta: RepMorphism         # i0 -> i1


def minimal_injective_copresentation(m: Rep) -> InjCopresentation:
    e0 = injective_envelope(m)
    com, proj = cokernel(e0.map)
    e1 = injective_envelope(com)
    theta = e1.map @ proj
    return InjCopresentation(
        module=m,
        i0=e0.std,
        embed=e0.map,
        comega=com,
        comega_projection=proj,
        i1=e1.std,
        comega_embed=e1.map,
        theta=theta,
    )


def syzygy(m: Rep, k=1):
    """k-th kernel of iterated minimal covers."""
    cur = m
    for _ in range(k):
        cov = projective_cover(cur)
        cur, _ = kernel(cov.map)
    return cur


def cosyzygy(m: Rep, k=1):
    cur = m
    for _ in range(k):
        env = injective_envelope(cur)
        cur, _ = cokernel(env.map)
    return cur


def _blockwise_transfer(f, src_std, tgt_std, piece_builder, assemble_std):
    """Rebuild a block morphism after transferring each block through paths."""
    alg = src_std.algebra
    out_blocks = {}
    for i, tv in enumerate(tgt_std.vertices):
        for j, sv in enumerate(src_std.vertices):
            block = tgt_std.projection(i) @ f @ src_std.injection(j)
            out_blocks[(i, j)] = piece_builder(block, sv, tv)
    src_new = assemble_std(alg, src_std.vertices)
    tgt_new = assemble_std(alg, tgt_std.vertices)
    total = RepMorphism.zero(src_new.rep, tgt_new.rep)
    for (i, j), blk in out_blocks.items():
        if blk is None:
            continue
        total = total + (tgt_new.injection(i) @ blk @ src_new.projection(j))
    return total, src_new, tgt_new


def nakayama_on_projectives(f, src_std: StandardProjective,
                            tgt_std: StandardProjective):
    """nu(f) for f between standard projectives; returns (map, src I, tgt I)."""
    alg = src_std.algebra

    def piece(block, sv, tv):
        coeffs = projective_hom_coefficients(alg, block, sv, tv)
        acc = None
        for p, c in coeffs:
            if alg.field.is_zero(c):
                continue
            term = injective_hom_from_path(alg, p).scale(c)
            acc = term if acc is None else acc + term
        return acc

    return _blockwise_transfer(
        f, src_std, tgt_std, piece, StandardInjective
    )


def injective_hom_coefficients(algebra, g: RepMorphism, src_vertex, tgt_vertex):
    """Coefficients of g: I(src) -> I(tgt) over {iota_p : p in basis(tgt, src)}.

    Dualizing turns g into a map between opposite projectives where the
    projective-side extraction applies; reversing the paths lands back in this
    algebra's basis.
    """
    opp = algebra.opposite()
    gd = dual_map(g)  # P_opp(src) -> P_opp(tgt) ... dual swaps direction
    coeffs = projective_hom_coefficients(opp, gd, tgt_vertex, src_vertex)
    out = []
    for op_path, c in coeffs:
        rev = op_path.arrows[::-1]
        if rev:
            lam_path = algebra.path_from_names(rev)
        else:
            lam_path = Path.trivial(op_path.source)
        out.append((lam_path, c))
    return out


def nakayama_inverse_on_injectives(g, src_std: StandardInjective,
                                   tgt_std: StandardInjective):
    """nu^-(g) for g between standard injectives; returns (map, src P, tgt P)."""
    alg = src_std.algebra

    def piece(block, sv, tv):
        coeffs = injective_hom_coefficients(alg, block, sv, tv)
        acc = None
        for p, c in coeffs:
            if alg.field.is_zero(c):
                continue
            residue = alg.reduce_path(p)
            for q, d in residue.items():
                term = path_right_multiplication(alg, q).scale(
                    alg.field.mul(c, d)
                )
                acc = term if acc is None else acc + term
        return acc

    return _blockwise_transfer(
        g, src_std, tgt_std, piece, StandardProjective
    )


def transpose(m: Rep):
    """Tr m over the opposite algebra, from a minimal presentation."""
    alg = m.algebra
    opp = alg.opposite()
    pres = minimal_projective_presentation(m)

    def piece_star(block, sv, tv):
        # block: P(sv) -> P(tv); Hom(-, algebra) sends it to a map
        # P_opp(tv) -> P_opp(sv) with the same path coefficients reversed.
        coeffs = projective_hom_coefficients(alg, block, sv, tv)
        acc = None
        for p, c in coeffs:
            if alg.field.is_zero(c):
                continue
            rev = p.arrows[::-1]
            if rev:
                op_res = opp.reduce_path(opp.path_from_names(rev))
            else:
                op_res = {Path.trivial(p.source): alg.field.one}
            for q, d in op_res.items():
                term = path_right_multiplication(opp, q).scale(
                    alg.field.mul(c, d)
                )
                acc = term if acc is None else acc + term
        return acc

    src_std = pres.p1
    tgt_std = pres.p0
    # Hom(-, algebra) is contravariant: delta*: Hom(p0, A) -> Hom(p1, A)
    out_blocks = {}
    for i, tv in enumerate(tgt_std.vertices):
        for j, sv in enumerate(src_std.vertices):
            block = tgt_std.projection(i) @ pres.delta @ src_std.injection(j)
            out_blocks[(i, j)] = piece_star(block, sv, tv)
    p0_op = StandardProjective(opp, tgt_std.vertices)
    p1_op = StandardProjective(opp, src_std.vertices)
    delta_star = RepMorphism.zero(p0_op.rep, p1_op.rep)
    for (i, j), blk in out_blocks.items():
        if blk is None:
            continue
        # blk: P_opp(tv_i) -> P_opp(sv_j)
        delta_star = delta_star + (p1_op.injection(j) @ blk @ p0_op.projection(i))
    tr, _ = cokernel(delta_star)
    return tr


def tau(m: Rep):
    """AR translate: kernel of nu(delta) on a minimal presentation."""
    pres = minimal_projective_presentation(m)
    nu_delta, _, _ = nakayama_on_projectives(pres.delta, pres.p1, pres.p0)
    t, _ = kernel(nu_delta)
    return t


def tau_minus(m: Rep):
    """Inverse AR translate: cokernel of nu^-(theta) on a copresentation."""
    copres = minimal_injective_copresentation(m)
    nu_theta, _, _ = nakayama_inverse_on_injectives(
        copres.theta, copres.i0, copres.i1
    )
    t, _ = cokernel(nu_theta)
    return t


# -- Ext groups ----------------------------------------------------------


@dataclass
class ExtResult:
    """Ext^d(m, n) with cocycle representatives.

    Cocycles are morphisms from the d-th syzygy of m to n; degree-1 classes
    can be realized as short exact sequences via realize_ext1.
    """

    dim: int
    degree: int
    source: Rep
    target: Rep
    syzygy_rep: Rep
    syzygy_inclusion: RepMorphism  # syzygy -> p_{d-1}
    ambient_std: StandardProjective
    cover: RepMorphism             # only for degree 1: p0 -> m
    cocycles: tuple                # morphisms syzygy -> n
    _class_data: tuple             # (restriction span rows, cocycle span rows)

    def class_coordinates(self, cocycle: RepMorphism):
        """Coordinates of the class of a cocycle over the chosen basis."""
        restr, reps = self._class_data
        f = cocycle.dom.algebra.field
        if not self.cocycles:
            return ()
        cols = [r for r in restr] + [c.flat() for c in self.cocycles]
        mat = Matrix(f, cols).transpose()
        rhs = Matrix.column(f, cocycle.flat())
        sol = mat.solve(rhs)
        if sol is None:
            raise RepError("not a cocycle for this Ext computation")
        k = len(restr)
        return tuple(sol.col(0)[k:])


def _ext_from_syzygy(m, n, degree, syz, incl, ambient_std, cover):
    """Hom(syz, n) modulo restrictions from the ambient projective."""
    f = m.algebra.field
    z_basis = hom_basis(syz, n)
    amb_basis = hom_basis(ambient_std.rep, n)
    restr_flat = []
    for g in amb_basis:
        restr_flat.append((g @ incl).flat())
    nflat = hom_flat_dim(syz, n)
    restr_space = Subspace.from_columns(f, nflat, restr_flat)
    z_space = Subspace.from_columns(f, nflat, [b.flat() for b in z_basis])
    comp = restr_space.intersect(z_space).complement_in(z_space)
    # restr_space lies inside z_space (restrictions are morphisms), so the
    # complement of the intersection is a transversal of the classes
    reps = [
        morphism_from_flat(syz, n, col, check=False)
        for col in comp.basis_matrix().cols()
    ]
    return ExtResult(
        dim=comp.dim,
        degree=degree,
        source=m,
        target=n,
        syzygy_rep=syz,
        syzygy_inclusion=incl,
        ambient_std=ambient_std,
        cover=cover,
        cocycles=tuple(reps),
        _class_data=(tuple(restr_space.basis_rows), None),
    )


def ext(m: Rep, n: Rep, degree=1):
    """Ext^degree(m, n) for degree 1 or 2 via minimal resolutions."""
    if degree == 1:
        pres = minimal_projective_presentation(m)
        return _ext_from_syzygy(
            m, n, 1, pres.omega, pres.omega_inclusion, pres.p0, pres.cover
        )
    if degree == 2:
        pres = minimal_projective_presentation(m)
        om2, incl2 = kernel(pres.omega_cover)
        incl2_in_p1 = incl2
        return _ext_from_syzygy(
            m, n, 2, om2, incl2_in_p1, pres.p1, pres.omega_cover
        )
    raise RepError("only Ext^1 and Ext^2 are computed")


def pushout(f: RepMorphism, g: RepMorphism):
    """Pushout of B <--f-- A --g--> C: returns (P, from_B, from_C)."""
    if f.dom != g.dom:
        raise RepError("pushout legs must share a domain")
    sd = direct_sum([g.cod, f.cod])
    stack = (sd.injections[0] @ g) - (sd.injections[1] @ f)
    p, proj = cokernel(stack)
    from_c = proj @ sd.injections[0]
    from_b = proj @ sd.injections[1]
    return p, from_b, from_c


def realize_ext1(ext_result: ExtResult, cocycle: RepMorphism):
    """Realize a degree-1 cocycle as 0 -> n -> E -> m -> 0 by pushout."""
    if ext_result.degree != 1:
        raise RepError("realization needs a degree-1 result")
    from .modules import Ses, induced_on_quotient

    m = ext_result.source
    n = ext_result.target
    j0 = ext_result.syzygy_inclusion
    p0 = ext_result.ambient_std.rep
    cover = ext_result.cover
    e_rep, from_p0, from_n = pushout(j0, cocycle)
    # the epi E -> m induced by the cover through the pushout projection
    sd = direct_sum([n, p0])
    stack = (sd.injections[0] @ cocycle) - (sd.injections[1] @ j0)
    _, proj = cokernel(stack)
    zero_then_cover = stack_from = (cover @ sd.projections[1])
    surj = induced_on_quotient(proj, zero_then_cover)
    return Ses(left=n, middle=e_rep, right=m, inj=from_n, surj=surj)
