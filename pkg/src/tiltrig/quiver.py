"""Quivers with admissible relations and the finite-dimensional path algebras
they present.

An algebra is built by spanning paths of increasing length and reducing each
(source, target, length) stratum against the degreewise span of the relation
ideal.  Relations must be admissible (paths of length >= 2) and
length-homogeneous, which keeps the ideal graded so the stratum reduction is
exact; the Jacobson radical is then exactly the arrow ideal and radical
powers can be read off path lengths.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import Field, Mat, rref

Path = Tuple[str, ...]  # arrow names in traversal order (first traversed first)


class QuiverError(ValueError):
    pass


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        self.arrows: Dict[str, Tuple[str, str]] = {}
        for name, src, dst in arrows:
            name, src, dst = str(name), str(src), str(dst)
            if name in self.arrows or name in self.vertices:
                raise QuiverError(f"duplicate arrow name {name!r}")
            if src not in self.vertices or dst not in self.vertices:
                raise QuiverError(f"arrow {name!r} has undeclared endpoint")
            self.arrows[name] = (src, dst)

    def source(self, a: str) -> str:
        return self.arrows[a][0]

    def target(self, a: str) -> str:
        return self.arrows[a][1]

    def arrows_from(self, v: str) -> List[str]:
        return [a for a, (s, _) in self.arrows.items() if s == v]

    def arrows_into(self, v: str) -> List[str]:
        return [a for a, (_, t) in self.arrows.items() if t == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a, t, s) for a, (s, t) in self.arrows.items()])

    def path_endpoints(self, path: Path) -> Tuple[str, str]:
        """(source, target) of a composable path; raises if not composable."""
        if not path:
            raise QuiverError("empty path has no unique endpoints")
        src = self.source(path[0])
        cur = src
        for a in path:
            if self.source(a) != cur:
                raise QuiverError(f"path {'.'.join(path)} is not composable at {a!r}")
            cur = self.target(a)
        return src, cur


class Relation:
    """K-linear combination of parallel paths, all of length >= 2."""

    def __init__(self, quiver: Quiver, terms: Sequence[Tuple[object, Path]]):
        if not terms:
            raise QuiverError("empty relation")
        self.terms = [(c, tuple(p)) for c, p in terms]
        endpoints = {quiver.path_endpoints(p) for _, p in self.terms}
        if len(endpoints) != 1:
            raise QuiverError("relation paths must share source and target")
        (self.src, self.dst) = endpoints.pop()
        lengths = {len(p) for _, p in self.terms}
        if min(lengths) < 2:
            raise QuiverError("relations must be admissible (paths of length >= 2)")
        if len(lengths) != 1:
            raise QuiverError("relations must be length-homogeneous")
        self.length = lengths.pop()

    def __repr__(self) -> str:
        return " + ".join(f"{c}*{'.'.join(p)}" for c, p in self.terms)


class FinDimAlgebra:
    """Basic path algebra KQ/I with a path-class basis and radical grading.

    `basis` lists path classes (the empty path at v is the idempotent e_v);
    `reduce(path)` rewrites any composable free path as a combination of
    basis paths, and products of basis elements go through it.
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: Sequence[Relation],
        field: Field,
        basis: List[Path],
        reductions: Dict[Path, Dict[Path, object]],
        max_length: int,
        order_covers: Optional[Sequence[Tuple[str, str]]] = None,
        duality_pairs: Optional[Dict[str, str]] = None,
        name: str = "",
    ):
        self.quiver = quiver
        self.relations = list(relations)
        self.field = field
        self.basis = basis
        self.index = {p: i for i, p in enumerate(basis)}
        self._reductions = reductions
        self.max_length = max_length  # all paths longer than this reduce to 0
        self.order_covers = [tuple(c) for c in (order_covers or [])]
        self.duality_pairs = dict(duality_pairs) if duality_pairs else None
        self.name = name
        if self.duality_pairs is not None:
            self._check_duality()

    # -- bookkeeping --------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vertex_of_idempotent(self, path: Path) -> Optional[str]:
        return path[0] if len(path) == 1 and path[0] in self.quiver.vertices else None

    def path_source(self, p: Path) -> str:
        if p[0] in self.quiver.vertices:
            return p[0]
        return self.quiver.source(p[0])

    def path_target(self, p: Path) -> str:
        if p[-1] in self.quiver.vertices:
            return p[-1]
        return self.quiver.target(p[-1])

    def path_length(self, p: Path) -> int:
        return 0 if p[0] in self.quiver.vertices else len(p)

    def reduce(self, path: Path) -> Dict[Path, object]:
        """Image of a free composable path in the basis (may be empty = 0).

        Recorded words are looked up directly; longer products are rewritten
        one arrow at a time through the recorded one-step extensions.
        """
        if path in self._reductions:
            return self._reductions[path]
        if self.path_length(path) > self.max_length:
            return {}
        F = self.field
        arrows = tuple(a for a in path if a not in self.quiver.vertices)
        src = self.quiver.source(arrows[0])
        cur: Dict[Path, object] = {(src,): F.one}
        for a in arrows:
            nxt: Dict[Path, object] = {}
            for b, coef in cur.items():
                ext = (a,) if b[0] in self.quiver.vertices else b + (a,)
                red = self._reductions.get(ext)
                if red is None:
                    if self.path_length(ext) > self.max_length:
                        continue
                    raise QuiverError(f"path {'.'.join(ext)} was never enumerated")
                for r, c in red.items():
                    v = F.add(nxt.get(r, F.zero), F.mul(coef, c))
                    if v == F.zero:
                        nxt.pop(r, None)
                    else:
                        nxt[r] = v
            cur = nxt
            if not cur:
                break
        self._reductions[path] = cur
        return cur

    def mult(self, p: Path, q: Path) -> Dict[Path, object]:
        """Product of two basis paths: traverse p, then q."""
        F = self.field
        ps, pt = self.path_source(p), self.path_target(p)
        qs, qt = self.path_source(q), self.path_target(q)
        if pt != qs:
            return {}
        lp, lq = self.path_length(p), self.path_length(q)
        if lp == 0:
            return {q: F.one}
        if lq == 0:
            return {p: F.one}
        return self.reduce(p + q)

    def mult_elements(self, x: Dict[Path, object], y: Dict[Path, object]) -> Dict[Path, object]:
        F = self.field
        out: Dict[Path, object] = {}
        for p, a in x.items():
            for q, b in y.items():
                for r, c in self.mult(p, q).items():
                    v = F.add(out.get(r, F.zero), F.mul(F.mul(a, b), c))
                    if v == F.zero:
                        out.pop(r, None)
                    else:
                        out[r] = v
        return out

    def radical_power_basis(self, i: int) -> List[Path]:
        """Basis paths spanning J^i (arrow ideal to the i-th power)."""
        return [p for p in self.basis if self.path_length(p) >= i]

    def radical_powers(self) -> List[List[Path]]:
        """Chain J^0 >= J^1 >= ... down to 0 (last entry empty)."""
        chain = []
        i = 0
        while True:
            layer = self.radical_power_basis(i)
            chain.append(layer)
            if not layer:
                return chain
            i += 1

    def loewy_length(self) -> int:
        return len(self.radical_powers()) - 1

    # -- duality -------------------------------------------------------------

    def _check_duality(self) -> None:
        pairs = self.duality_pairs
        for a, b in pairs.items():
            if a not in self.quiver.arrows or b not in self.quiver.arrows:
                raise QuiverError(f"duality names unknown arrow in {a}={b}")
            if pairs.get(b) != a:
                raise QuiverError(f"duality pairing is not an involution at {a!r}")
            sa, ta = self.quiver.arrows[a]
            sb, tb = self.quiver.arrows[b]
            if (sa, ta) != (tb, sb):
                raise QuiverError(f"duality pair {a}={b} does not reverse direction")
        if set(pairs) != set(self.quiver.arrows):
            raise QuiverError("duality must pair every arrow")
        # the induced anti-map must preserve the relation ideal
        F = self.field
        for rel in self.relations:
            img: Dict[Path, object] = {}
            for c, p in rel.terms:
                q = self.dual_path(p)
                for r, x in self.reduce(q).items():
                    v = F.add(img.get(r, F.zero), F.mul(F.of(c), x))
                    if v == F.zero:
                        img.pop(r, None)
                    else:
                        img[r] = v
            if img:
                raise QuiverError(f"duality does not preserve the relation ideal ({rel!r})")

    def dual_path(self, p: Path) -> Path:
        """Anti-involution on paths: reverse traversal order, swap arrows."""
        if p[0] in self.quiver.vertices:
            return p
        return tuple(self.duality_pairs[a] for a in reversed(p))

    def opposite(self) -> "FinDimAlgebra":
        """Same presentation with all arrows and relation words reversed."""
        op_q = self.quiver.opposite()
        op_rels = [
            Relation(op_q, [(c, tuple(reversed(p))) for c, p in rel.terms])
            for rel in self.relations
        ]
        return build_algebra(
            op_q,
            op_rels,
            self.field,
            order_covers=self.order_covers,
            duality_pairs=self.duality_pairs,
            name=self.name + ".op" if self.name else "",
        )


def build_algebra(
    quiver: Quiver,
    relations: Sequence[Relation],
    field: Field,
    dim_cap: int = 10000,
    order_covers: Optional[Sequence[Tuple[str, str]]] = None,
    duality_pairs: Optional[Dict[str, str]] = None,
    name: str = "",
) -> FinDimAlgebra:
    """Quotient of the path algebra by the ideal the relations generate.

    Paths are enumerated by increasing length; in each (source, target,
    length) stratum the span of u.r.w (relation r, connecting paths u, w) is
    removed and non-pivot paths survive as basis elements.  Stops at the
    first length contributing nothing; aborts past dim_cap.
    """
    if dim_cap <= 0:
        raise QuiverError("dim_cap must be positive")

    basis: List[Path] = [(v,) for v in quiver.vertices]
    reductions: Dict[Path, Dict[Path, object]] = {(v,): {(v,): field.one} for v in quiver.vertices}

    by_len_rel: Dict[int, List[Relation]] = {}
    for r in relations:
        by_len_rel.setdefault(r.length, []).append(r)

    # all composable words at the previous length, plus the ideal rows there
    words_prev: Dict[Tuple[str, str], List[Path]] = {(v, v): [(v,)] for v in quiver.vertices}
    rows_prev: Dict[Tuple[str, str], List[List]] = {}
    total_words = len(quiver.vertices)
    length = 0

    while True:
        length += 1
        words_cur: Dict[Tuple[str, str], List[Path]] = {}
        for (s, t), ws in sorted(words_prev.items()):
            for w in ws:
                for a in sorted(quiver.arrows_from(t)):
                    ext = (a,) if w[0] in quiver.vertices else w + (a,)
                    words_cur.setdefault((s, quiver.target(a)), []).append(ext)
                    total_words += 1
        if total_words > 200000:
            raise QuiverError("word enumeration exploded; raise relations or lower dim_cap scale")
        if not words_cur:
            max_length = length
            break

        # ideal degree-`length` rows: fresh relations + one-arrow extensions
        rows_cur: Dict[Tuple[str, str], List[List]] = {}
        col_cur = {key: {w: i for i, w in enumerate(ws)} for key, ws in words_cur.items()}

        def add_row(key, entries):
            cols = col_cur[key]
            row = [field.zero] * len(cols)
            for word, c in entries:
                j = cols[word]
                row[j] = field.add(row[j], c)
            rows_cur.setdefault(key, []).append(row)

        for rel in by_len_rel.get(length, []):
            add_row((rel.src, rel.dst), [(p, field.of(c)) for c, p in rel.terms])
        for (s, t), rows in rows_prev.items():
            words = words_prev[(s, t)]
            for a in quiver.arrows_into(s):
                u = quiver.source(a)
                for row in rows:
                    add_row(
                        (u, t),
                        [(_prepend(a, w, quiver), c) for w, c in zip(words, row) if c != field.zero],
                    )
            for a in quiver.arrows_from(t):
                v = quiver.target(a)
                for row in rows:
                    add_row(
                        (s, v),
                        [(_append(w, a, quiver), c) for w, c in zip(words, row) if c != field.zero],
                    )

        survivors = 0
        for key in sorted(words_cur):
            words = words_cur[key]
            rows = rows_cur.get(key, [])
            if not rows:
                keep, rules = list(words), {w: {w: field.one} for w in words}
            else:
                R, pivots = rref(Mat(field, rows))
                piv_set = set(pivots)
                keep = [w for j, w in enumerate(words) if j not in piv_set]
                rules = {w: {w: field.one} for w in keep}
                for i, pc in enumerate(pivots):
                    expr: Dict[Path, object] = {}
                    for j, w in enumerate(words):
                        if j not in piv_set and R.data[i][j] != field.zero:
                            expr[w] = field.neg(R.data[i][j])
                    rules[words[pc]] = expr
                rows_cur[key] = [R.data[i] for i in range(len(pivots))]
            reductions.update(rules)
            basis.extend(keep)
            survivors += len(keep)
            if len(basis) > dim_cap:
                raise QuiverError(
                    f"basis exceeded dim_cap={dim_cap}; the presentation may be infinite-dimensional"
                )

        if survivors == 0:
            max_length = length
            break
        words_prev, rows_prev = words_cur, rows_cur

    basis.sort(key=lambda p: (0 if p[0] in quiver.vertices else len(p), p))
    return FinDimAlgebra(
        quiver,
        relations,
        field,
        basis,
        reductions,
        max_length,
        order_covers=order_covers,
        duality_pairs=duality_pairs,
        name=name,
    )


def _prepend(a: str, w: Path, quiver: Quiver) -> Path:
    return (a,) if w[0] in quiver.vertices else (a,) + w


def _append(w: Path, a: str, quiver: Quiver) -> Path:
    return (a,) if w[0] in quiver.vertices else w + (a,)


# -- .alg file format ---------------------------------------------------------


class AlgParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_alg_text(
    text: str, field_override: Optional[int] = None, dim_cap: int = 10000, name: str = ""
) -> FinDimAlgebra:
    """Parse the line-oriented .alg format (field/vertex/order/arrow/relation/duality)."""
    characteristic: Optional[int] = None
    vertices: List[str] = []
    covers: List[Tuple[str, str]] = []
    arrows: List[Tuple[str, str, str]] = []
    raw_relations: List[Tuple[int, List[Tuple[str, List[str]]]]] = []
    duality: Dict[str, str] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        try:
            if kw == "field":
                characteristic = int(parts[1])
            elif kw == "vertex":
                vertices.extend(parts[1:])
            elif kw == "order":
                if len(parts) != 4 or parts[2] != "<":
                    raise ValueError("expected 'order <a> < <b>'")
                covers.append((parts[1], parts[3]))
            elif kw == "arrow":
                if len(parts) != 4:
                    raise ValueError("expected 'arrow <name> <src> <dst>'")
                arrows.append((parts[1], parts[2], parts[3]))
            elif kw == "relation":
                raw_relations.append((line_no, _parse_relation_terms(" ".join(parts[1:]))))
            elif kw == "duality":
                for item in parts[1:]:
                    a, _, b = item.partition("=")
                    if not a or not b:
                        raise ValueError(f"bad duality item {item!r}")
                    duality[a] = b
                    duality[b] = a
            else:
                raise ValueError(f"unknown keyword {kw!r}")
        except AlgParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise AlgParseError(line_no, str(exc)) from exc

    if characteristic is None:
        raise AlgParseError(0, "missing 'field' line")
    if field_override is not None:
        characteristic = field_override
    if not vertices:
        raise AlgParseError(0, "no vertices declared")

    try:
        field = Field(characteristic)
        quiver = Quiver(vertices, arrows)
        relations = []
        for line_no, terms in raw_relations:
            try:
                relations.append(Relation(quiver, [(Field(0).of(c), tuple(p)) for c, p in terms]))
            except (QuiverError, ValueError) as exc:
                raise AlgParseError(line_no, str(exc)) from exc
        return build_algebra(
            quiver,
            relations,
            field,
            dim_cap=dim_cap,
            order_covers=covers,
            duality_pairs=duality or None,
            name=name,
        )
    except AlgParseError:
        raise
    except (QuiverError, ValueError) as exc:
        raise AlgParseError(0, str(exc)) from exc


def _parse_relation_terms(body: str) -> List[Tuple[str, List[str]]]:
    terms = []
    for chunk in body.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty relation term")
        coeff, star, word = chunk.partition("*")
        if not star:
            coeff, word = "1", chunk
        path = word.strip().split(".")
        if any(not a for a in path):
            raise ValueError(f"bad path {word!r}")
        terms.append((coeff.strip(), path))
    return terms


def load_alg(path: str, field_override: Optional[int] = None, dim_cap: int = 10000) -> FinDimAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_alg_text(fh.read(), field_override=field_override, dim_cap=dim_cap, name=path)
