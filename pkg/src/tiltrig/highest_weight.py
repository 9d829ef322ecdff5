"""Highest-weight structure over a path algebra: standard and costandard
modules, quasi-hereditary verification, Delta-filtrations with head shifts,
radical-respecting checks, Ringel's tilting construction, and the BGG
reciprocity check for algebras with a duality.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import Mat, Subspace, kernel_basis
from .modules import (
    LoewyProfile,
    ModuleError,
    Morphism,
    Representation,
    SubFamily,
    decompose,
    direct_sum,
    ext1,
    hom_space,
    identity_morphism,
    projective_rep,
    quotient_rep,
    radical_profile,
    radical_series,
    simple_rep,
    sub_rep,
)
from .quiver import FinDimAlgebra


class PosetError(ValueError):
    pass


class WeightPoset:
    """Partial order on vertex labels, given by cover relations."""

    def __init__(self, labels: Sequence[str], covers: Sequence[Tuple[str, str]]):
        self.labels = list(labels)
        idx = {l: i for i, l in enumerate(self.labels)}
        n = len(self.labels)
        leq = [[i == j for j in range(n)] for i in range(n)]
        for a, b in covers:
            if a not in idx or b not in idx:
                raise PosetError(f"order relation names unknown label: {a} < {b}")
            leq[idx[a]][idx[b]] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    for j in range(n):
                        if leq[k][j]:
                            leq[i][j] = True
        for i in range(n):
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise PosetError(f"order is not antisymmetric at {self.labels[i]}, {self.labels[j]}")
        self._leq = leq
        self._idx = idx

    def leq(self, a: str, b: str) -> bool:
        return self._leq[self._idx[a]][self._idx[b]]

    def less(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def maximal(self, labels: Sequence[str]) -> List[str]:
        labels = list(labels)
        return [a for a in labels if not any(self.less(a, b) for b in labels)]

    def max_label(self, labels: Sequence[str]) -> str:
        """A maximal element; ties broken lexicographically for determinism."""
        return sorted(self.maximal(labels))[0]


def dualize(M: Representation) -> Representation:
    """Duality image over the same algebra via the arrow anti-involution."""
    pairs = M.algebra.duality_pairs
    if pairs is None:
        raise ModuleError("algebra declares no duality pairing")
    mats = {a: M.mats[pairs[a]].transpose() for a in M.algebra.quiver.arrows}
    return Representation(M.algebra, dict(M.dims), mats, name=f"dual({M.name})")


def transpose_to_opposite(M: Representation, op_algebra: FinDimAlgebra) -> Representation:
    """Vector-space dual of M as a module over the opposite algebra."""
    mats = {a: M.mats[a].transpose() for a in M.algebra.quiver.arrows}
    return Representation(op_algebra, dict(M.dims), mats, name=f"D({M.name})")


def trace_of(P: Representation, M: Representation) -> SubFamily:
    """Sum of the images of all homomorphisms P -> M."""
    fam = SubFamily(M)
    for g in hom_space(P, M):
        fam = fam.sum(g.image())
    return fam


class DeltaStep:
    def __init__(self, label: str, shift: int, head_vertex: str, head_vector: list):
        self.label = label
        self.shift = shift
        self.head_vertex = head_vertex
        self.head_vector = head_vector

    def __repr__(self) -> str:
        return f"DeltaStep({self.label}, shift {self.shift})"


class DeltaFiltration:
    """Ascending chain 0 = C_0 < ... < C_n = M with standard subquotients."""

    def __init__(self, module: Representation, steps: List[DeltaStep], chain: List[SubFamily]):
        self.module = module
        self.steps = steps
        self.chain = chain

    def multiplicities(self) -> Counter:
        return Counter(s.label for s in self.steps)

    def placement(self) -> List[Tuple[str, int]]:
        return [(s.label, s.shift) for s in self.steps]

    def __repr__(self) -> str:
        return f"DeltaFiltration({[(s.label, s.shift) for s in self.steps]})"


class FiltrationFailure:
    def __init__(self, label: str, trace_dims: Dict[str, int], reason: str):
        self.label = label
        self.trace_dims = trace_dims
        self.reason = reason

    def __repr__(self) -> str:
        return f"FiltrationFailure(at {self.label}: {self.reason})"


class StandardSystem:
    """The L / P / I / Delta / nabla / T family attached to the weight poset."""

    def __init__(self, algebra: FinDimAlgebra):
        self.algebra = algebra
        if not algebra.order_covers and len(algebra.quiver.vertices) > 1:
            raise PosetError("algebra file declares no weight order")
        self.poset = WeightPoset(algebra.quiver.vertices, algebra.order_covers)
        self.labels = list(algebra.quiver.vertices)
        self._cache: Dict[Tuple[str, str], object] = {}
        self._op_system: Optional["StandardSystem"] = None

    # -- the six families ----------------------------------------------------

    def simple(self, lam: str) -> Representation:
        return self._memo(("L", lam), lambda: simple_rep(self.algebra, lam))

    def projective(self, lam: str) -> Representation:
        return self._memo(("P", lam), lambda: projective_rep(self.algebra, lam))

    def standard_kernel(self, lam: str) -> SubFamily:
        """Sum of traces of higher projectives inside P(lam)."""

        def build():
            P = self.projective(lam)
            fam = SubFamily(P)
            for mu in self.labels:
                if not self.poset.leq(mu, lam):
                    fam = fam.sum(trace_of(self.projective(mu), P))
            return fam

        return self._memo(("Ukernel", lam), build)

    def standard_with_projection(self, lam: str) -> Tuple[Representation, Morphism]:
        def build():
            P = self.projective(lam)
            delta, proj = quotient_rep(P, self.standard_kernel(lam))
            delta.name = f"Delta({lam})"
            return delta, proj

        return self._memo(("Delta+proj", lam), build)

    def standard(self, lam: str) -> Representation:
        return self.standard_with_projection(lam)[0]

    def op_system(self) -> "StandardSystem":
        if self._op_system is None:
            self._op_system = StandardSystem(self.algebra.opposite())
        return self._op_system

    def injective(self, lam: str) -> Representation:
        def build():
            if self.algebra.duality_pairs is not None:
                M = dualize(self.projective(lam))
            else:
                op = self.op_system()
                M = transpose_to_opposite(op.projective(lam), self.algebra)
            M.name = f"I({lam})"
            return M

        return self._memo(("I", lam), build)

    def costandard(self, lam: str) -> Representation:
        def build():
            if self.algebra.duality_pairs is not None:
                M = dualize(self.standard(lam))
            else:
                op = self.op_system()
                M = transpose_to_opposite(op.standard(lam), self.algebra)
            M.name = f"Nabla({lam})"
            return M

        return self._memo(("Nabla", lam), build)

    def tilting(self, lam: str, seed: int = 0) -> Representation:
        return self._memo(("T", lam, seed), lambda: ringel_tilting(self, lam, seed=seed))

    def dual_module(self, M: Representation) -> Tuple[Representation, "StandardSystem"]:
        """Duality image of M together with the system it lives over."""
        if self.algebra.duality_pairs is not None:
            return dualize(M), self
        op = self.op_system()
        return transpose_to_opposite(M, op.algebra), op

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]


def build_standard_system(algebra: FinDimAlgebra) -> StandardSystem:
    return StandardSystem(algebra)


# -- Delta-filtrations ------------------------------------------------------------


def _class_depth(M: Representation, rad_chain: List[SubFamily], vertex: str, vec: list, below: SubFamily) -> int:
    """Largest s with vec in rad^s M + below (depth of the head class)."""
    s = 0
    while s + 1 < len(rad_chain):
        if rad_chain[s + 1].sum(below).spaces[vertex].contains(vec):
            s += 1
        else:
            break
    return s


def _preimage_family(M: Representation, proj: Morphism, fam: SubFamily) -> SubFamily:
    """{x in M : proj(x) in fam}, computed per vertex."""
    from .linalg import quotient_map

    spaces = {}
    for v in M.vertices:
        Q, _ = quotient_map(M.field, fam.spaces[v])
        comp = Q.mul(proj.mats[v])
        spaces[v] = Subspace(M.field, M.dims[v], kernel_basis(comp))
    return SubFamily(M, spaces)


def find_delta_filtration(sys: StandardSystem, M: Representation):
    """Greedy standard filtration: trace of the maximal weight, then recurse.

    Returns a DeltaFiltration, or a FiltrationFailure whose trace witness
    shows the obstruction (greedy failure at a maximal weight is conclusive).
    """
    steps: List[DeltaStep] = []
    chain: List[SubFamily] = [SubFamily(M)]
    bottom = SubFamily(M)
    rad_chain = radical_series(M)

    while bottom.total_dim < M.total_dim:
        quot, proj = quotient_rep(M, bottom)
        factors = Counter()
        for layer in radical_profile(quot):
            factors += layer
        lam = sys.poset.max_label([l for l, c in factors.items() if c > 0])
        P = sys.projective(lam)
        delta = sys.standard(lam)
        kernel_fam = sys.standard_kernel(lam)
        homs = hom_space(P, quot)
        trace = SubFamily(quot)
        for g in homs:
            trace = trace.sum(g.image())
        factoring = all(
            all(g.mats[v].apply(vec) == [M.field.zero] * quot.dims[v] for vec in kernel_fam.spaces[v].basis)
            for g in homs
            for v in M.vertices
        )
        if not factoring or trace.total_dim != len(homs) * delta.total_dim:
            return FiltrationFailure(
                lam,
                {v: trace.dim_at(v) for v in M.vertices},
                "trace of the maximal weight is not a standard power"
                + ("" if factoring else " (a map does not factor through the standard quotient)"),
            )
        partial = SubFamily(quot)
        for g in homs:
            partial = partial.sum(g.image())
            head_vec_bar = g.mats[lam].apply(_generator_vector(P, lam))
            head_vec = _lift_through(proj, lam, head_vec_bar)
            steps.append(DeltaStep(lam, -1, lam, head_vec))
            chain.append(_preimage_family(M, proj, partial))
        bottom = chain[-1]

    for i, step in enumerate(steps):
        step.shift = _class_depth(M, rad_chain, step.head_vertex, step.head_vector, chain[i])
    return DeltaFiltration(M, steps, chain)


def _generator_vector(P: Representation, lam: str) -> list:
    vec = [P.field.zero] * P.dims[lam]
    vec[P.basis_paths[lam].index((lam,))] = P.field.one
    return vec


def _lift_through(proj: Morphism, vertex: str, vec: list) -> list:
    from .linalg import solve

    lifted = solve(proj.mats[vertex], vec)
    if lifted is None:
        raise ModuleError("projection lift failed")
    return lifted


def delta_filtration_from_chain(
    sys: StandardSystem, M: Representation, chain: List[SubFamily]
) -> DeltaFiltration:
    """Validate a user-supplied chain as a standard filtration and tag shifts.

    Each successive quotient must be isomorphic to a standard module; the
    step's head shift is the radical depth of its head class in M.
    """
    from .modules import radical_profile as _rprof, subquotient as _subq

    if chain[0].total_dim != 0 or chain[-1].total_dim != M.total_dim:
        raise ModuleError("chain must run from 0 to the whole module")
    rad_chain = radical_series(M)
    steps: List[DeltaStep] = []
    for below, above in zip(chain, chain[1:]):
        if not above.contains(below):
            raise ModuleError("chain is not nested")
        Q, _, _ = _subq(M, above, below)
        head = _rprof(Q)[0]
        if sum(head.values()) != 1:
            raise ModuleError("chain step does not have a simple head")
        lam = next(iter(head))
        delta = sys.standard(lam)
        if Q.total_dim != delta.total_dim or not any(
            g.image().total_dim == Q.total_dim for g in hom_space(delta, Q)
        ):
            raise ModuleError(f"chain step is not a standard module at weight {lam}")
        # head class representative: complement of below + J*above inside above
        from .modules import radical_of as _radof

        shallow = below.sum(_radof(M, above))
        comp = shallow.spaces[lam].complement_in(above.spaces[lam])
        if not comp:
            raise ModuleError("could not locate the step head")
        vec = comp[0]
        steps.append(DeltaStep(lam, _class_depth(M, rad_chain, lam, vec, below), lam, vec))
    return DeltaFiltration(M, steps, list(chain))


def predicted_profile(sys: StandardSystem, placement: Sequence[Tuple[str, int]]) -> LoewyProfile:
    """Layer formula: shifted standard-module layers summed over the placement."""
    layers: List[Counter] = []
    for lam, shift in placement:
        for t, layer in enumerate(radical_profile(sys.standard(lam))):
            while len(layers) <= shift + t:
                layers.append(Counter())
            layers[shift + t] += layer
    return layers


def check_radical_respecting(
    sys: StandardSystem, M: Representation, filt: DeltaFiltration
) -> Tuple[bool, LoewyProfile, LoewyProfile]:
    """Compare the layer-formula prediction with the actual radical profile."""
    predicted = predicted_profile(sys, filt.placement())
    actual = radical_profile(M)
    while len(predicted) < len(actual):
        predicted.append(Counter())
    while len(actual) < len(predicted):
        actual.append(Counter())
    return predicted == actual, predicted, actual


def check_quasihereditary(sys: StandardSystem) -> dict:
    """Verify End Delta = K and that each projective has a standard filtration."""
    report = {"ok": True, "weights": {}, "shift_convention": "non-negative radical depths"}
    for lam in sys.labels:
        entry: Dict[str, object] = {}
        end_dim = len(hom_space(sys.standard(lam), sys.standard(lam)))
        entry["end_dim"] = end_dim
        entry["axiom_i"] = end_dim == 1
        entry["projective_profile"] = [dict(layer) for layer in radical_profile(sys.projective(lam))]
        filt = find_delta_filtration(sys, sys.projective(lam))
        if isinstance(filt, FiltrationFailure):
            entry["axiom_ii"] = False
            entry["witness"] = repr(filt)
        else:
            mults = filt.multiplicities()
            heredity = mults[lam] == 1 and all(
                sys.poset.less(lam, mu) for mu in mults if mu != lam
            )
            entry["axiom_ii"] = heredity
            entry["filtration"] = filt.placement()
            if not heredity:
                entry["witness"] = f"step labels {dict(mults)} violate the heredity ordering"
        entry["ok"] = entry["axiom_i"] and entry["axiom_ii"]
        report["weights"][lam] = entry
        report["ok"] = report["ok"] and entry["ok"]
    return report


# -- universal extensions and Ringel tilting ------------------------------------------


def universal_extension(
    X: Representation, delta: Representation, ext
) -> Tuple[Representation, Morphism]:
    """0 -> X -> X' -> delta^d -> 0 along a basis of Ext^1(delta, X).

    Realized as (X (+) P0^d) / graph, where P0 covers delta and the graph
    identifies each syzygy copy with its cocycle image in X.  Returns X' and
    the inclusion of X.
    """
    d = ext.dim
    cover = ext.cover
    omega, iota = cover.syzygy, cover.syzygy_inclusion
    big, injs, _ = direct_sum([X] + [cover.P0] * d)
    vectors = []
    for v in X.vertices:
        for k in range(omega.dims[v]):
            unit = [X.field.zero] * omega.dims[v]
            unit[k] = X.field.one
            for i, phi in enumerate(ext.classes):
                x_part = phi.mats[v].apply(unit)
                p_part = iota.mats[v].apply(unit)
                vec = injs[0].mats[v].apply(x_part)
                neg = injs[1 + i].mats[v].apply([X.field.neg(c) for c in p_part])
                vectors.append((v, [X.field.add(a, b) for a, b in zip(vec, neg)]))
    graph = SubFamily.from_vectors(big, vectors)
    quot, proj = quotient_rep(big, graph)
    include_X = proj.compose(injs[0])
    if not include_X.is_injective():
        raise ModuleError("universal extension failed to embed the base module")
    if quot.total_dim != X.total_dim + d * delta.total_dim:
        raise ModuleError("universal extension has the wrong dimension")
    return quot, include_X


def _summand_projection(M: Representation, families: List[SubFamily], which: int) -> Morphism:
    """Projection M -> summand rep for an internal direct-sum decomposition."""
    F = M.field
    target_rep, _ = sub_rep(M, families[which])
    mats = {}
    for v in M.vertices:
        cols = []
        sizes = []
        for fam in families:
            cols.extend(fam.spaces[v].basis)
            sizes.append(fam.spaces[v].dim)
        if M.dims[v] == 0:
            mats[v] = Mat.zero(F, target_rep.dims[v], 0)
            continue
        B = Mat.from_cols(F, cols) if cols else Mat.zero(F, M.dims[v], 0)
        # solve B * y = e_j for each ambient basis vector, read off the block
        rows_out = [[F.zero] * M.dims[v] for _ in range(sizes[which])]
        start = sum(sizes[:which])
        from .linalg import solve

        for j in range(M.dims[v]):
            e = [F.zero] * M.dims[v]
            e[j] = F.one
            y = solve(B, e)
            if y is None:
                raise ModuleError("families do not span the module")
            for i in range(sizes[which]):
                rows_out[i][j] = y[start + i]
        mats[v] = Mat(F, rows_out) if rows_out else Mat.zero(F, 0, M.dims[v])
    return Morphism(M, target_rep, mats)


def ringel_tilting(sys: StandardSystem, lam: str, seed: int = 0) -> Representation:
    """Iterated universal extensions from Delta(lam); the summand containing it.

    Weights are processed maximal-first, so each universal extension kills the
    extensions against its weight for good and the loop terminates.
    """
    X = sys.standard(lam)
    include = identity_morphism(X)
    max_mult = 1
    iterations = 0
    while True:
        iterations += 1
        if iterations > len(sys.labels) * max_mult * 10:
            raise ModuleError("tilting construction failed to stabilize")
        pending = []
        for mu in sys.labels:
            e = ext1(sys.standard(mu), X)
            if e.dim > 0:
                pending.append((mu, e))
        if not pending:
            break
        # extend at a maximal pending weight (lexicographic tie-break)
        mu = sorted(sys.poset.maximal([m for m, _ in pending]))[0]
        e = dict(pending)[mu]
        max_mult = max(max_mult, e.dim)
        X, inc = universal_extension(X, sys.standard(mu), e)
        include = inc.compose(include)
        X.name = f"ext({lam})"

    parts = decompose(X, seed=seed)
    candidates = []
    for i, part in enumerate(parts):
        proj = _summand_projection(X, [p.family for p in parts], i)
        if not proj.compose(include).is_injective():
            continue
        candidates.append(part)
    if not candidates:
        raise ModuleError("no summand embeds the standard module; construction bug")
    best = max(candidates, key=lambda p: p.rep.total_dim)
    T = best.rep
    T.name = f"T({lam})"
    return T


# -- BGG duality check -------------------------------------------------------------


def check_bgg(sys: StandardSystem) -> dict:
    """Fixed simples plus layer reciprocity of projective radical profiles."""
    if sys.algebra.duality_pairs is None:
        return {"applicable": False, "note": "not a BGG presentation (no duality declared)"}
    report = {"applicable": True, "ok": True, "fixed_simples": True, "failures": []}
    for lam in sys.labels:
        img = dualize(sys.simple(lam))
        if img.dims != sys.simple(lam).dims:
            report["fixed_simples"] = False
            report["ok"] = False
    profiles = {lam: radical_profile(sys.projective(lam)) for lam in sys.labels}
    depth = max(len(p) for p in profiles.values())
    for s in range(depth):
        for lam in sys.labels:
            for mu in sys.labels:
                a = profiles[lam][s][mu] if s < len(profiles[lam]) else 0
                b = profiles[mu][s][lam] if s < len(profiles[mu]) else 0
                if a != b:
                    report["ok"] = False
                    report["failures"].append({"layer": s, "pair": [lam, mu], "counts": [a, b]})
    return report


def nabla_multiplicities(sys: StandardSystem, M: Representation) -> Optional[Counter]:
    """Costandard filtration multiplicities via the dual-side greedy search."""
    dual, dual_sys = sys.dual_module(M)
    filt = find_delta_filtration(dual_sys, dual)
    if isinstance(filt, FiltrationFailure):
        return None
    return filt.multiplicities()
