"""Finite-dimensional modules over a path algebra, presented as quiver
representations: one exact matrix per arrow.

Submodules are per-vertex subspace families closed under the arrow action
(vertex idempotents split any module element into its vertex components, so
nothing is lost by working per vertex).  Radical and socle series, spins,
subquotients with induced filtrations, Hom and Ext^1 spaces, direct-sum
decomposition and the rigidity test all live here.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import Mat, Subspace, kernel_basis, quotient_map
from .quiver import FinDimAlgebra, Path


class ModuleError(ValueError):
    pass


class Representation:
    """Module over a FinDimAlgebra: dims per vertex, one matrix per arrow.

    The matrix of arrow a: u -> w has shape (dim w) x (dim u); a path acts by
    multiplying its arrow matrices in traversal order (first arrow applied
    first).  Construction checks shapes and that every relation acts by zero.
    """

    def __init__(self, algebra: FinDimAlgebra, dims: Dict[str, int], mats: Dict[str, Mat], name: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        self.vertices = list(algebra.quiver.vertices)
        self.dims = {v: int(dims.get(v, 0)) for v in self.vertices}
        self.mats: Dict[str, Mat] = {}
        self.name = name
        for a, (u, w) in algebra.quiver.arrows.items():
            m = mats.get(a)
            if m is None:
                m = Mat.zero(self.field, self.dims[w], self.dims[u])
            if (m.rows, m.cols) != (self.dims[w], self.dims[u]):
                raise ModuleError(
                    f"matrix for arrow {a!r} has shape {m.rows}x{m.cols}, expected {self.dims[w]}x{self.dims[u]}"
                )
            self.mats[a] = m
        self._path_cache: Dict[Path, Mat] = {}
        self._check_relations()

    # -- basics --------------------------------------------------------------

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def path_matrix(self, path: Path) -> Mat:
        """Action of a composable arrow word (traversal order)."""
        path = tuple(path)
        if path in self._path_cache:
            return self._path_cache[path]
        if path and path[0] in self.algebra.quiver.vertices:
            v = path[0]
            out = Mat.identity(self.field, self.dims[v])
        else:
            src = self.algebra.quiver.source(path[0])
            out = Mat.identity(self.field, self.dims[src])
            for a in path:
                out = self.mats[a].mul(out)
        self._path_cache[path] = out
        return out

    def _check_relations(self) -> None:
        F = self.field
        for rel in self.algebra.relations:
            total = None
            for c, p in rel.terms:
                term = self.path_matrix(p).scale(F.of(c))
                total = term if total is None else total.add(term)
            if total is not None and not total.is_zero():
                raise ModuleError(f"relation {rel!r} does not act by zero")

    def __repr__(self) -> str:
        d = ", ".join(f"{v}:{self.dims[v]}" for v in self.vertices)
        return f"Representation({self.name or 'M'}; {d})"


class SubFamily:
    """Per-vertex subspace family of a representation (canonical rref bases)."""

    def __init__(self, rep: Representation, spaces: Optional[Dict[str, Subspace]] = None):
        self.rep = rep
        self.spaces = {}
        for v in rep.vertices:
            if spaces and v in spaces:
                self.spaces[v] = spaces[v]
            else:
                self.spaces[v] = Subspace(rep.field, rep.dims[v])

    @classmethod
    def from_vectors(cls, rep: Representation, vectors: Iterable[Tuple[str, Sequence]]) -> "SubFamily":
        buckets: Dict[str, list] = {}
        for v, vec in vectors:
            buckets.setdefault(v, []).append(list(vec))
        return cls(rep, {v: Subspace(rep.field, rep.dims[v], vecs) for v, vecs in buckets.items()})

    @classmethod
    def full(cls, rep: Representation) -> "SubFamily":
        return cls(rep, {v: Subspace.full(rep.field, rep.dims[v]) for v in rep.vertices})

    def dim_at(self, v: str) -> int:
        return self.spaces[v].dim

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, SubFamily) and all(
            self.spaces[v] == other.spaces[v] for v in self.rep.vertices
        )

    def __hash__(self) -> int:
        return hash(tuple(hash(self.spaces[v]) for v in self.rep.vertices))

    def __repr__(self) -> str:
        d = ", ".join(f"{v}:{self.spaces[v].dim}" for v in self.rep.vertices)
        return f"SubFamily({d})"

    def sum(self, other: "SubFamily") -> "SubFamily":
        return SubFamily(self.rep, {v: self.spaces[v].sum(other.spaces[v]) for v in self.rep.vertices})

    def intersect(self, other: "SubFamily") -> "SubFamily":
        return SubFamily(self.rep, {v: self.spaces[v].intersect(other.spaces[v]) for v in self.rep.vertices})

    def contains(self, other: "SubFamily") -> bool:
        return all(self.spaces[v].contains_space(other.spaces[v]) for v in self.rep.vertices)

    def is_stable(self) -> bool:
        """Closed under every arrow, i.e. an honest submodule."""
        for a, (u, w) in self.rep.algebra.quiver.arrows.items():
            X = self.rep.mats[a]
            for vec in self.spaces[u].basis:
                if not self.spaces[w].contains(X.apply(vec)):
                    return False
        return True


# -- building blocks -----------------------------------------------------------


def simple_rep(algebra: FinDimAlgebra, vertex: str) -> Representation:
    if vertex not in algebra.quiver.vertices:
        raise ModuleError(f"unknown vertex {vertex!r}")
    return Representation(algebra, {vertex: 1}, {}, name=f"L({vertex})")


def projective_rep(algebra: FinDimAlgebra, vertex: str) -> Representation:
    """Indecomposable projective at a vertex: spanned by paths starting there."""
    if vertex not in algebra.quiver.vertices:
        raise ModuleError(f"unknown vertex {vertex!r}")
    paths = [p for p in algebra.basis if algebra.path_source(p) == vertex]
    by_vertex: Dict[str, List[Path]] = {v: [] for v in algebra.quiver.vertices}
    for p in paths:
        by_vertex[algebra.path_target(p)].append(p)
    index = {v: {p: i for i, p in enumerate(ps)} for v, ps in by_vertex.items()}
    dims = {v: len(ps) for v, ps in by_vertex.items()}
    F = algebra.field
    mats = {}
    for a, (u, w) in algebra.quiver.arrows.items():
        m = Mat.zero(F, dims[w], dims[u])
        for p in by_vertex[u]:
            j = index[u][p]
            for q, c in algebra.mult(p, (a,)).items():
                m.data[index[w][q]][j] = F.add(m.data[index[w][q]][j], c)
        mats[a] = m
    rep = Representation(algebra, dims, mats, name=f"P({vertex})")
    rep.basis_paths = by_vertex  # vertex -> ordered path list (generator = idempotent)
    return rep


def projective_generator_vector(proj: Representation, vertex: str) -> Tuple[str, list]:
    """The idempotent basis vector generating P(vertex)."""
    paths = proj.basis_paths[vertex]
    i = paths.index((vertex,))
    vec = [proj.field.zero] * proj.dims[vertex]
    vec[i] = proj.field.one
    return vertex, vec


class Morphism:
    """Module homomorphism: one matrix per vertex, commuting with all arrows."""

    def __init__(self, source: Representation, target: Representation, mats: Dict[str, Mat], check: bool = False):
        self.source = source
        self.target = target
        self.mats = mats
        if check and not self.commutes():
            raise ModuleError("matrices do not commute with the arrow action")

    def commutes(self) -> bool:
        for a, (u, w) in self.source.algebra.quiver.arrows.items():
            lhs = self.mats[w].mul(self.source.mats[a])
            rhs = self.target.mats[a].mul(self.mats[u])
            if lhs.data != rhs.data:
                return False
        return True

    def apply(self, vertex: str, vec: Sequence) -> list:
        return self.mats[vertex].apply(list(vec))

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other (other first)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ModuleError("composition mismatch")
        return Morphism(
            other.source,
            self.target,
            {v: self.mats[v].mul(other.mats[v]) for v in self.source.vertices},
        )

    def add(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, {v: self.mats[v].add(other.mats[v]) for v in self.source.vertices})

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, {v: self.mats[v].scale(c) for v in self.source.vertices})

    def image(self) -> SubFamily:
        return SubFamily(
            self.target,
            {
                v: Subspace(self.target.field, self.target.dims[v], [self.mats[v].col(j) for j in range(self.mats[v].cols)])
                for v in self.target.vertices
            },
        )

    def kernel(self) -> SubFamily:
        return SubFamily(
            self.source,
            {v: Subspace(self.source.field, self.source.dims[v], kernel_basis(self.mats[v])) for v in self.source.vertices},
        )

    def is_injective(self) -> bool:
        return self.kernel().total_dim == 0

    def is_surjective(self) -> bool:
        return self.image().total_dim == self.target.total_dim

    def is_zero(self) -> bool:
        return all(self.mats[v].is_zero() for v in self.source.vertices)

    def flatten(self) -> list:
        out = []
        for v in self.source.vertices:
            for row in self.mats[v].data:
                out.extend(row)
        return out


def identity_morphism(rep: Representation) -> Morphism:
    return Morphism(rep, rep, {v: Mat.identity(rep.field, rep.dims[v]) for v in rep.vertices})


def zero_morphism(source: Representation, target: Representation) -> Morphism:
    return Morphism(source, target, {v: Mat.zero(source.field, target.dims[v], source.dims[v]) for v in source.vertices})


def morphism_from_flat(source: Representation, target: Representation, flat: Sequence) -> Morphism:
    mats = {}
    pos = 0
    for v in source.vertices:
        r, c = target.dims[v], source.dims[v]
        if r == 0 or c == 0:
            mats[v] = Mat.zero(source.field, r, c)
        else:
            mats[v] = Mat(source.field, [list(flat[pos + i * c : pos + (i + 1) * c]) for i in range(r)])
        pos += r * c
    return Morphism(source, target, mats)


def hom_space(M: Representation, N: Representation) -> List[Morphism]:
    """Basis of Hom(M, N): solve the commuting conditions exactly."""
    if M.algebra is not N.algebra and M.algebra.basis != N.algebra.basis:
        raise ModuleError("hom_space requires modules over the same algebra")
    F = M.field
    offsets = {}
    pos = 0
    for v in M.vertices:
        offsets[v] = pos
        pos += N.dims[v] * M.dims[v]
    nvars = pos
    rows = []
    for a, (u, w) in M.algebra.quiver.arrows.items():
        XM, XN = M.mats[a], N.mats[a]
        for r in range(N.dims[w]):
            for c in range(M.dims[u]):
                row = [F.zero] * nvars
                # f_w[r, k] * XM[k, c]
                for k in range(M.dims[w]):
                    if XM.data[k][c] != F.zero:
                        row[offsets[w] + r * M.dims[w] + k] = F.add(
                            row[offsets[w] + r * M.dims[w] + k], XM.data[k][c]
                        )
                # - XN[r, k] * f_u[k, c]
                for k in range(N.dims[u]):
                    if XN.data[r][k] != F.zero:
                        row[offsets[u] + k * M.dims[u] + c] = F.sub(
                            row[offsets[u] + k * M.dims[u] + c], XN.data[r][k]
                        )
                if any(x != F.zero for x in row):
                    rows.append(row)
    if nvars == 0:
        return []
    if not rows:
        sols = Mat.identity(F, nvars).data
    else:
        sols = kernel_basis(Mat(F, rows))
    return [morphism_from_flat(M, N, s) for s in sols]


def morphism_coords(basis: List[Morphism], f: Morphism) -> Optional[list]:
    """Coordinates of f in a hom-space basis (None if outside the span)."""
    if not basis:
        return [] if f.is_zero() else None
    F = f.source.field
    cols = [g.flatten() for g in basis]
    from .linalg import solve as lin_solve

    return lin_solve(Mat.from_cols(F, cols), f.flatten())


# -- sums, subs, quotients ------------------------------------------------------


def direct_sum(reps: Sequence[Representation]) -> Tuple[Representation, List[Morphism], List[Morphism]]:
    """Direct sum with the canonical injections and projections."""
    if not reps:
        raise ModuleError("empty direct sum")
    algebra = reps[0].algebra
    F = reps[0].field
    dims = {v: sum(r.dims[v] for r in reps) for v in reps[0].vertices}
    offsets = []
    pos = {v: 0 for v in reps[0].vertices}
    for r in reps:
        offsets.append(dict(pos))
        for v in r.vertices:
            pos[v] += r.dims[v]
    mats = {}
    for a, (u, w) in algebra.quiver.arrows.items():
        m = Mat.zero(F, dims[w], dims[u])
        for r, off in zip(reps, offsets):
            X = r.mats[a]
            for i in range(X.rows):
                for j in range(X.cols):
                    m.data[off[w] + i][off[u] + j] = X.data[i][j]
        mats[a] = m
    total = Representation(algebra, dims, mats, name="(+)".join(r.name or "?" for r in reps))
    injections, projections = [], []
    for r, off in zip(reps, offsets):
        inj, proj = {}, {}
        for v in r.vertices:
            im = Mat.zero(F, dims[v], r.dims[v])
            pm = Mat.zero(F, r.dims[v], dims[v])
            for i in range(r.dims[v]):
                im.data[off[v] + i][i] = F.one
                pm.data[i][off[v] + i] = F.one
            inj[v], proj[v] = im, pm
        injections.append(Morphism(r, total, inj))
        projections.append(Morphism(total, r, proj))
    return total, injections, projections


def sub_rep(M: Representation, fam: SubFamily) -> Tuple[Representation, Morphism]:
    """The family as a representation in its own right, with its inclusion."""
    if not fam.is_stable():
        raise ModuleError("family is not arrow-stable; not a submodule")
    F = M.field
    dims = {v: fam.spaces[v].dim for v in M.vertices}
    mats = {}
    for a, (u, w) in M.algebra.quiver.arrows.items():
        m = Mat.zero(F, dims[w], dims[u])
        for j, vec in enumerate(fam.spaces[u].basis):
            img = M.mats[a].apply(vec)
            coords = fam.spaces[w].coords(img)
            if coords is None:
                raise ModuleError("instability detected while building submodule")
            for i, c in enumerate(coords):
                m.data[i][j] = c
        mats[a] = m
    sub = Representation(M.algebra, dims, mats, name=f"sub({M.name})")
    inc = Morphism(sub, M, {v: Mat.from_cols(F, fam.spaces[v].basis) if dims[v] else Mat.zero(F, M.dims[v], 0) for v in M.vertices})
    return sub, inc


def quotient_rep(M: Representation, fam: SubFamily) -> Tuple[Representation, Morphism]:
    """Quotient by a submodule family, with the projection morphism."""
    if not fam.is_stable():
        raise ModuleError("family is not arrow-stable; not a submodule")
    F = M.field
    qmaps, sections = {}, {}
    for v in M.vertices:
        Q, free = quotient_map(F, fam.spaces[v])
        qmaps[v] = Q
        S = Mat.zero(F, M.dims[v], len(free))
        for k, fc in enumerate(free):
            S.data[fc][k] = F.one
        sections[v] = S
    dims = {v: qmaps[v].rows for v in M.vertices}
    mats = {}
    for a, (u, w) in M.algebra.quiver.arrows.items():
        mats[a] = qmaps[w].mul(M.mats[a]).mul(sections[u])
    quot = Representation(M.algebra, dims, mats, name=f"{M.name}/sub")
    proj = Morphism(M, quot, qmaps)
    return quot, proj


# -- series and profiles ---------------------------------------------------------


def spin_submodule(M: Representation, vectors: Iterable[Tuple[str, Sequence]]) -> SubFamily:
    """Smallest arrow-stable family containing the given vectors."""
    fam = SubFamily.from_vectors(M, vectors)
    changed = True
    while changed:
        changed = False
        for a, (u, w) in M.algebra.quiver.arrows.items():
            X = M.mats[a]
            for vec in fam.spaces[u].basis:
                img = X.apply(vec)
                if not fam.spaces[w].contains(img):
                    fam = fam.sum(SubFamily.from_vectors(M, [(w, img)]))
                    changed = True
    return fam


def radical_of(M: Representation, fam: SubFamily) -> SubFamily:
    """J * fam: the span of all arrow images (a submodule whenever fam is)."""
    vectors = []
    for a, (u, w) in M.algebra.quiver.arrows.items():
        X = M.mats[a]
        for vec in fam.spaces[u].basis:
            vectors.append((w, X.apply(vec)))
    return SubFamily.from_vectors(M, vectors)


def radical_series(M: Representation) -> List[SubFamily]:
    """Descending chain M = rad^0 > rad^1 > ... > 0 (last entry zero)."""
    chain = [SubFamily.full(M)]
    while not chain[-1].is_zero():
        chain.append(radical_of(M, chain[-1]))
    return chain


def socle_of(M: Representation, inner: SubFamily) -> SubFamily:
    """Preimage of `inner` under all arrows: {x : every arrow sends x into inner}."""
    F = M.field
    spaces = {}
    for u in M.vertices:
        rows = []
        for a in M.algebra.quiver.arrows_from(u):
            w = M.algebra.quiver.target(a)
            Q, _ = quotient_map(F, inner.spaces[w])
            comp = Q.mul(M.mats[a])
            rows.extend(comp.data)
        if rows:
            spaces[u] = Subspace(F, M.dims[u], kernel_basis(Mat(F, rows)))
        else:
            spaces[u] = Subspace.full(F, M.dims[u])
    return SubFamily(M, spaces)


def socle_series(M: Representation) -> List[SubFamily]:
    """Ascending chain 0 = soc^0 < soc^1 < ... < M (first entry zero)."""
    chain = [SubFamily(M)]
    while chain[-1].total_dim < M.total_dim:
        nxt = socle_of(M, chain[-1])
        if nxt.total_dim == chain[-1].total_dim:
            raise ModuleError("socle series stalled; algebra radical assumptions violated")
        chain.append(nxt)
    return chain


LoewyProfile = List[Counter]


def profile_from_chain(M: Representation, chain: Sequence[SubFamily], descending: bool) -> LoewyProfile:
    """Multiset of simple labels on each layer of a filtration chain."""
    layers: LoewyProfile = []
    for big, small in zip(chain, chain[1:]) if descending else zip(chain[1:], chain):
        layer = Counter()
        for v in M.vertices:
            d = big.dim_at(v) - small.dim_at(v)
            if d:
                layer[v] += d
        layers.append(layer)
    return layers


def radical_profile(M: Representation) -> LoewyProfile:
    return profile_from_chain(M, radical_series(M), descending=True)


def socle_profile(M: Representation) -> LoewyProfile:
    return profile_from_chain(M, socle_series(M), descending=False)


def loewy_length(M: Representation) -> int:
    return len(radical_series(M)) - 1


def composition_counter(M: Representation) -> Counter:
    total = Counter()
    for layer in radical_profile(M):
        total += layer
    return total


def format_profile(profile: LoewyProfile, label_order: Sequence[str]) -> str:
    order = {lab: i for i, lab in enumerate(label_order)}
    parts = []
    for layer in profile:
        labs = sorted(layer.elements(), key=lambda l: order.get(l, len(order)))
        parts.append(",".join(labs) if labs else "-")
    return " | ".join(parts)


def is_rigid(M: Representation) -> Tuple[bool, Optional[dict]]:
    """True iff rad^i M = soc^(l-i) M for all i; witness = first failing i."""
    rad = radical_series(M)
    soc = socle_series(M)
    if len(rad) != len(soc):
        # cannot happen for honest series over the same module
        raise ModuleError("radical and socle series lengths differ")
    ell = len(rad) - 1
    for i in range(ell + 1):
        if rad[i] != soc[ell - i]:
            return False, {
                "layer": i,
                "radical_dims": {v: rad[i].dim_at(v) for v in M.vertices},
                "socle_dims": {v: soc[ell - i].dim_at(v) for v in M.vertices},
            }
    return True, None


def subquotient(
    M: Representation, outer: SubFamily, inner: SubFamily
) -> Tuple[Representation, List[SubFamily], Morphism]:
    """outer/inner with the induced filtration (rad^i M cap outer + inner)/inner.

    Returns the subquotient representation, the induced chain expressed in the
    subquotient's own coordinates, and the projection outer_rep -> subquotient.
    """
    if not inner.is_stable() or not outer.is_stable():
        raise ModuleError("subquotient inputs must be arrow-stable")
    if not outer.contains(inner):
        raise ModuleError("subquotient requires inner <= outer")
    outer_rep, inc = sub_rep(M, outer)
    inner_in_outer = SubFamily(
        outer_rep,
        {
            v: Subspace(
                M.field,
                outer.spaces[v].dim,
                [outer.spaces[v].coords(vec) for vec in inner.spaces[v].basis],
            )
            for v in M.vertices
        },
    )
    quot, proj = quotient_rep(outer_rep, inner_in_outer)
    induced: List[SubFamily] = []
    for rad_i in radical_series(M):
        meet = rad_i.intersect(outer)
        vecs = []
        for v in M.vertices:
            for vec in meet.spaces[v].basis:
                coords = outer.spaces[v].coords(vec)
                vecs.append((v, proj.mats[v].apply(coords)))
        induced.append(SubFamily.from_vectors(quot, vecs))
    while len(induced) > 1 and induced[-1].is_zero() and induced[-2].is_zero():
        induced.pop()
    return quot, induced, proj


# -- projective covers and Ext^1 --------------------------------------------------


class ProjectiveCover:
    """P0 = (+) P(lambda)^(head multiplicity) with an explicit surjection."""

    def __init__(self, M: Representation):
        algebra = M.algebra
        F = M.field
        rad = radical_of(M, SubFamily.full(M))
        summands: List[Representation] = []
        lifts: List[Tuple[str, list]] = []
        for v in M.vertices:
            comp = rad.spaces[v].complement_in(Subspace.full(F, M.dims[v]))
            for vec in comp:
                summands.append(projective_rep(algebra, v))
                lifts.append((v, vec))
        self.summand_labels = [v for v, _ in lifts]
        if summands:
            self.P0, self.injections, self.projections = direct_sum(summands)
        else:
            self.P0 = Representation(algebra, {}, {}, name="0")
            self.injections, self.projections = [], []
        mats = {v: Mat.zero(F, M.dims[v], self.P0.dims[v]) for v in M.vertices}
        col_off = {v: 0 for v in M.vertices}
        for proj, (lam, lift) in zip(summands, lifts):
            for w in M.vertices:
                for p in proj.basis_paths[w]:
                    col = col_off[w] + proj.basis_paths[w].index(p)
                    img = M.path_matrix(p).apply(lift) if p != (lam,) else list(lift)
                    for i, c in enumerate(img):
                        mats[w].data[i][col] = c
            for w in M.vertices:
                col_off[w] += proj.dims[w]
        self.cover = Morphism(self.P0, M, mats)
        if not self.cover.is_surjective():
            raise ModuleError("projective cover failed to surject")
        self.module = M
        fam = self.cover.kernel()
        self.syzygy_family = fam
        self.syzygy, self.syzygy_inclusion = sub_rep(self.P0, fam)


class Ext1Result:
    def __init__(self, dim: int, classes: List[Morphism], cover: ProjectiveCover, hom_syz: List[Morphism], boundary_coords: List[list]):
        self.dim = dim
        self.classes = classes  # morphisms syzygy -> N representing a basis of Ext^1
        self.cover = cover
        self.hom_syzygy_basis = hom_syz
        self.boundary_coords = boundary_coords


def ext1(M: Representation, N: Representation) -> Ext1Result:
    """Ext^1(M, N) = Hom(Omega M, N) / restrictions of Hom(P0, N)."""
    cover = ProjectiveCover(M)
    omega, inc = cover.syzygy, cover.syzygy_inclusion
    hom_syz = hom_space(omega, N)
    hom_p0 = hom_space(cover.P0, N)
    coords = []
    for g in hom_p0:
        c = morphism_coords(hom_syz, g.compose(inc))
        if c is None:
            raise ModuleError("restriction escaped Hom(Omega, N); solver bug")
        coords.append(c)
    F = M.field
    if hom_syz:
        boundary = Subspace(F, len(hom_syz), coords)
        classes = []
        for k, f in enumerate(hom_syz):
            unit = [F.zero] * len(hom_syz)
            unit[k] = F.one
            if not boundary.contains(unit):
                classes.append(f)
                boundary = boundary.sum(Subspace(F, len(hom_syz), [unit]))
        dim = len(hom_syz) - Subspace(F, len(hom_syz), coords).dim
    else:
        classes, dim = [], 0
    return Ext1Result(dim, classes, cover, hom_syz, coords)


def ext1_dim_by_cocycles(M: Representation, N: Representation) -> int:
    """Independent Ext^1 computation: block upper-triangular middle terms.

    A candidate extension is N (+) M with connecting blocks C_a; relations
    impose linear conditions on the C_a and coboundaries are the blocks of
    the form X^N h - h X^M.  Used as an oracle against ext1().
    """
    F = M.field
    algebra = M.algebra
    offs = {}
    pos = 0
    for a, (u, w) in algebra.quiver.arrows.items():
        offs[a] = pos
        pos += N.dims[w] * M.dims[u]
    nvars = pos

    def block_var(a, i, j):
        return offs[a] + i * M.dims[algebra.quiver.source(a)] + j

    rows = []
    for rel in algebra.relations:
        src, dst = rel.src, rel.dst
        for i in range(N.dims[dst]):
            for j in range(M.dims[src]):
                row = [F.zero] * nvars
                for coeff, p in rel.terms:
                    coeff = F.of(coeff)
                    # off-diagonal block of X^E_p: sum over the position k of
                    # the arrow where the path drops from the M side to N
                    for k, a in enumerate(p):
                        suffix = p[k + 1 :]
                        prefix = p[:k]
                        left = N.path_matrix(suffix) if suffix else Mat.identity(F, N.dims[algebra.quiver.target(a)])
                        right = M.path_matrix(prefix) if prefix else Mat.identity(F, M.dims[algebra.quiver.source(a)])
                        for r in range(left.cols):
                            lv = left.data[i][r]
                            if lv == F.zero:
                                continue
                            for c in range(right.rows):
                                rv = right.data[c][j]
                                if rv == F.zero:
                                    continue
                                idx = block_var(a, r, c)
                                row[idx] = F.add(row[idx], F.mul(coeff, F.mul(lv, rv)))
                if any(x != F.zero for x in row):
                    rows.append(row)
    if nvars == 0:
        return 0
    cocycles = len(kernel_basis(Mat(F, rows))) if rows else nvars

    # coboundary space: h = (h_v), C_a = X^N_a h_u - h_w X^M_a ... wait, sign
    # convention is irrelevant for the span.
    hvars = 0
    hoffs = {}
    for v in M.vertices:
        hoffs[v] = hvars
        hvars += N.dims[v] * M.dims[v]
    cob_rows = []
    for hv in range(hvars):
        flat = [F.zero] * hvars
        flat[hv] = F.one
        hmats = {}
        p2 = 0
        for v in M.vertices:
            r, c = N.dims[v], M.dims[v]
            if r == 0 or c == 0:
                hmats[v] = Mat.zero(F, r, c)
            else:
                hmats[v] = Mat(F, [[flat[p2 + i * c + j] for j in range(c)] for i in range(r)])
            p2 += r * c
        vec = [F.zero] * nvars
        for a, (u, w) in algebra.quiver.arrows.items():
            blk = N.mats[a].mul(hmats[u]).sub(hmats[w].mul(M.mats[a]))
            for i in range(blk.rows):
                for j in range(blk.cols):
                    vec[block_var(a, i, j)] = blk.data[i][j]
        cob_rows.append(vec)
    boundaries = Subspace(F, nvars, cob_rows).dim if cob_rows else 0
    return cocycles - boundaries


# -- decomposition ------------------------------------------------------------------


class Summand:
    def __init__(self, family: SubFamily, rep: Representation, inclusion: Morphism, certificate: str):
        self.family = family
        self.rep = rep
        self.inclusion = inclusion
        self.certificate = certificate  # "exhaustive" | "sampled" | "trivial"


def _fitting_split(M: Representation, f: Morphism) -> Optional[Tuple[SubFamily, SubFamily]]:
    """M = ker f^n (+) im f^n when f is neither nilpotent nor invertible."""
    n = M.total_dim
    power = f
    for _ in range(max(1, n.bit_length() + 1)):
        power = power.compose(power)
    ker, im = power.kernel(), power.image()
    if ker.total_dim == 0 or im.total_dim == 0:
        return None
    if ker.total_dim + im.total_dim != M.total_dim:
        return None  # not yet stabilized along this f; treat as no split
    return ker, im


def _endo_candidates(M: Representation, basis: List[Morphism], seed: int) -> Iterable[Morphism]:
    F = M.field
    ident = identity_morphism(M)
    for f in basis:
        yield f
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield basis[i].add(basis[j])
            yield basis[i].add(basis[j].scale(F.neg(F.one)))
    shift_consts = [1, -1, 2, -2] if F.p == 0 else [c for c in range(1, min(F.p, 5))]
    for f in list(basis):
        for c in shift_consts:
            yield f.add(ident.scale(F.neg(F.of(c))))
    if F.p != 0 and F.p ** len(basis) <= 2 ** 14:
        for coeffs in itertools.product(F.elements(), repeat=len(basis)):
            f = None
            for c, g in zip(coeffs, basis):
                if c == F.zero:
                    continue
                term = g.scale(c)
                f = term if f is None else f.add(term)
            if f is not None:
                yield f
        return
    rng = random.Random(seed)
    lo, hi = (-4, 4) if F.p == 0 else (0, F.p - 1)
    for _ in range(200):
        f = None
        for g in basis:
            c = F.of(rng.randint(lo, hi))
            if c == F.zero:
                continue
            term = g.scale(c)
            f = term if f is None else f.add(term)
        if f is not None:
            yield f
            for c in shift_consts:
                yield f.add(ident.scale(F.neg(F.of(c))))


def _certify_local(M: Representation, basis: List[Morphism], seed: int) -> Optional[str]:
    """Check sampled endomorphisms are nilpotent or invertible; None = failed."""
    exhaustive = M.field.p != 0 and M.field.p ** len(basis) <= 2 ** 14
    n = M.total_dim
    for f in _endo_candidates(M, basis, seed):
        power = f
        for _ in range(max(1, n.bit_length() + 1)):
            power = power.compose(power)
        k = power.kernel().total_dim
        if 0 < k < M.total_dim:
            return None
    return "exhaustive" if exhaustive else "sampled"


def decompose(M: Representation, seed: int = 0) -> List[Summand]:
    """Indecomposable summands via Fitting decompositions (deterministic seed).

    Over a small finite field the endomorphism algebra is searched
    exhaustively, making the local-ring certificate exact; over the rationals
    the certificate is sampled.
    """
    if M.total_dim == 0:
        return []
    out: List[Summand] = []
    stack: List[SubFamily] = [SubFamily.full(M)]
    while stack:
        fam = stack.pop()
        rep, inc = sub_rep(M, fam)
        endo = hom_space(rep, rep)
        if rep.total_dim == 1 or len(endo) == 1:
            out.append(Summand(fam, rep, inc, "trivial" if rep.total_dim == 1 else "exhaustive"))
            continue
        split = None
        for f in _endo_candidates(rep, endo, seed):
            split = _fitting_split(rep, f)
            if split:
                break
        if split:
            for part in split:
                stack.append(_pull_back(M, fam, rep, part))
            continue
        cert = _certify_local(rep, endo, seed)
        out.append(Summand(fam, rep, inc, cert if cert else "inconclusive"))
    out.sort(key=lambda s: (-s.rep.total_dim, tuple(s.family.dim_at(v) for v in M.vertices)))
    return out


def _pull_back(M: Representation, fam: SubFamily, rep: Representation, part: SubFamily) -> SubFamily:
    """Family of `rep` (in fam coordinates) as a family of the ambient M."""
    vecs = []
    for v in M.vertices:
        fam_basis = fam.spaces[v].basis
        for coords in part.spaces[v].basis:
            vec = [M.field.zero] * M.dims[v]
            for c, b in zip(coords, fam_basis):
                if c != M.field.zero:
                    vec = [M.field.add(x, M.field.mul(c, y)) for x, y in zip(vec, b)]
            vecs.append((v, vec))
    return SubFamily.from_vectors(M, vecs)


# -- finite-field enumeration helpers (oracles) -------------------------------------


def subspace_vectors(sub: Subspace, include_zero: bool = False) -> Iterable[list]:
    F = sub.field
    if F.p == 0:
        raise ModuleError("cannot enumerate vectors over the rationals")
    for coeffs in itertools.product(F.elements(), repeat=sub.dim):
        if not include_zero and all(c == 0 for c in coeffs):
            continue
        vec = [F.zero] * sub.ambient
        for c, b in zip(coeffs, sub.basis):
            if c:
                vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, b)]
        yield vec


def all_submodules(M: Representation, max_total_dim: int = 10) -> List[SubFamily]:
    """Full submodule lattice over a finite field: cyclic spins + join closure."""
    if M.field.p == 0:
        raise ModuleError("submodule enumeration requires a finite field")
    if M.total_dim > max_total_dim:
        raise ModuleError(f"module too large ({M.total_dim}) for lattice enumeration")
    cyclics = {SubFamily(M)}
    for v in M.vertices:
        for vec in subspace_vectors(Subspace.full(M.field, M.dims[v])):
            cyclics.add(spin_submodule(M, [(v, vec)]))
    lattice = set(cyclics)
    frontier = set(cyclics)
    while frontier:
        new = set()
        for a in frontier:
            for b in cyclics:
                s = a.sum(b)
                if s not in lattice:
                    lattice.add(s)
                    new.add(s)
        frontier = new
    return sorted(lattice, key=lambda f: (f.total_dim, tuple(f.dim_at(v) for v in M.vertices)))


def hom_combinations(basis: List[Morphism]) -> Iterable[Morphism]:
    """All nonzero combinations of a hom basis over a small finite field."""
    F = basis[0].source.field if basis else None
    if not basis:
        return
    if F.p == 0 or F.p ** len(basis) > 2 ** 14:
        raise ModuleError("hom-space enumeration out of range")
    for coeffs in itertools.product(F.elements(), repeat=len(basis)):
        if all(c == 0 for c in coeffs):
            continue
        f = None
        for c, g in zip(coeffs, basis):
            if c == 0:
                continue
            term = g.scale(c)
            f = term if f is None else f.add(term)
        yield f


def is_isomorphic_bruteforce(M: Representation, N: Representation) -> Optional[Morphism]:
    """Search for an isomorphism over a small finite field (oracle use only)."""
    if M.total_dim != N.total_dim or any(M.dims[v] != N.dims[v] for v in M.vertices):
        return None
    homs = hom_space(M, N)
    if not homs:
        return None if M.total_dim else identity_morphism(M)
    for f in hom_combinations(homs):
        if f.kernel().total_dim == 0:
            return f
    return None


# -- .rep file format -----------------------------------------------------------------


def parse_rep_text(text: str, algebra: FinDimAlgebra, name: str = "") -> Representation:
    dims: Dict[str, int] = {}
    mats: Dict[str, Mat] = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line:
            continue
        parts = line.split()
        if parts[0] == "algebra":
            continue  # resolved by the caller
        if parts[0] == "dim":
            dims[parts[1]] = int(parts[2])
        elif parts[0] == "map":
            a = parts[1]
            if a not in algebra.quiver.arrows:
                raise ModuleError(f"unknown arrow {a!r} in representation file")
            u, w = algebra.quiver.arrows[a]
            rows = []
            for _ in range(dims.get(w, 0)):
                row_line = lines[i].split("#", 1)[0].strip()
                i += 1
                rows.append([algebra.field.of(x) for x in row_line.split()])
            mats[a] = Mat(algebra.field, rows) if rows else Mat.zero(algebra.field, 0, dims.get(u, 0))
        else:
            raise ModuleError(f"unknown keyword {parts[0]!r} in representation file")
    return Representation(algebra, dims, mats, name=name)


def load_rep(path: str, algebra: Optional[FinDimAlgebra] = None, field_override: Optional[int] = None) -> Representation:
    import os

    from .quiver import load_alg

    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if algebra is None:
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line.startswith("algebra "):
                alg_path = line.split(None, 1)[1]
                if not os.path.isabs(alg_path):
                    alg_path = os.path.join(os.path.dirname(os.path.abspath(path)), alg_path)
                algebra = load_alg(alg_path, field_override=field_override)
                break
        if algebra is None:
            raise ModuleError("representation file lacks an 'algebra' line")
    return parse_rep_text(text, algebra, name=path)
