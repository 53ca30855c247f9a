"""Presheaves of finite sets, colimits by union-find, categories of elements.

A presheaf on a FinCategory assigns a finite labelled set to every object and
a contravariant action to every morphism.  Colimits of finite-set diagrams are
computed by a union-find pass whose canonical class representative is the
least (diagram-object index, element index) pair; every construction that
quotients anything funnels through that single routine, which is what makes
nominally-isomorphic evaluations come out bit-identical.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import BudgetExceededError, SlotMismatchError
from .fincat import FinCategory, FunctorTable, ValidationFailure, ValidationReport

DEFAULT_BUDGET = 10**5


def element_budget() -> int:
    """Cap on elements entering a single colimit; RELMONAD_BUDGET overrides."""
    raw = os.environ.get("RELMONAD_BUDGET", "")
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_BUDGET


class MergeCounter:
    """Instrumentation: counts union-find merges that join distinct classes."""

    def __init__(self):
        self.value = 0

    def reset(self):
        self.value = 0


merge_counter = MergeCounter()


class FinSet:
    def __init__(self, labels):
        self.labels = tuple(labels)

    def __len__(self):
        return len(self.labels)

    def content_key(self):
        return self.labels

    def __repr__(self):
        return f"FinSet({list(self.labels)!r})"


_uid = itertools.count()


class Presheaf:
    """at[x] is a FinSet per object; act[m] maps at(tgt m) -> at(src m)."""

    def __init__(self, base: FinCategory, at, act):
        self.base = base
        self.at = tuple(at)
        self.act = tuple(tuple(a) for a in act)
        self.uid = next(_uid)  # cheap memo key; equal content can differ in uid
        self._key = None

    def value(self, x) -> FinSet:
        return self.at[x]

    def action(self, m):
        return self.act[m]

    def content_key(self):
        if self._key is None:
            self._key = (tuple(s.labels for s in self.at), self.act)
        return self._key

    def __repr__(self):
        sizes = tuple(len(s) for s in self.at)
        return f"Presheaf(base={self.base.name!r}, sizes={sizes})"


def validate_presheaf(p: Presheaf) -> ValidationReport:
    """Typing, identity action, and contravariant functoriality, exhaustively."""
    c = p.base
    fails = []
    if len(p.at) != c.n_objects or len(p.act) != c.n_morphisms:
        return ValidationReport((ValidationFailure("presheaf-shape", "table sizes"),))
    for m in c.morphisms:
        row = p.act[m]
        if len(row) != len(p.at[c.tgt(m)]) or any(
            not (0 <= v < len(p.at[c.src(m)])) for v in row
        ):
            fails.append(ValidationFailure("presheaf-typing", f"act[{m}]"))
    if fails:
        return ValidationReport(tuple(fails))
    for a in c.objects:
        i = c.id_of(a)
        if p.act[i] != tuple(range(len(p.at[a]))):
            fails.append(ValidationFailure("broken-identity-action", f"act[id_{a}]"))
    for f in c.morphisms:
        for g in c.morphisms:
            if c.tgt(f) != c.src(g):
                continue
            gf = c.compose(g, f)
            composed = tuple(p.act[f][p.act[g][e]] for e in range(len(p.at[c.tgt(g)])))
            if composed != p.act[gf]:
                fails.append(
                    ValidationFailure("broken-contravariance", f"g={g} f={f}")
                )
    return ValidationReport(tuple(fails))


class PresheafMorphism:
    """Natural transformation between presheaves on the same base."""

    def __init__(self, src: Presheaf, dst: Presheaf, components):
        self.src = src
        self.dst = dst
        self.components = tuple(tuple(c) for c in components)
        self.uid = next(_uid)  # shared counter with Presheaf; used as memo key

    def at(self, x):
        return self.components[x]

    def then(self, other: "PresheafMorphism") -> "PresheafMorphism":
        """self followed by other."""
        comps = tuple(
            tuple(other.components[x][v] for v in self.components[x])
            for x in range(len(self.components))
        )
        return PresheafMorphism(self.src, other.dst, comps)

    @staticmethod
    def identity(p: Presheaf) -> "PresheafMorphism":
        return PresheafMorphism(p, p, tuple(tuple(range(len(s))) for s in p.at))

    def is_bijection(self) -> bool:
        return all(
            len(set(row)) == len(row) == len(self.dst.at[x])
            for x, row in enumerate(self.components)
        )

    def inverse(self) -> "PresheafMorphism":
        comps = []
        for x, row in enumerate(self.components):
            inv = [None] * len(self.dst.at[x])
            for e, v in enumerate(row):
                inv[v] = e
            if any(v is None for v in inv):
                raise ValueError(f"component at object {x} is not a bijection")
            comps.append(tuple(inv))
        return PresheafMorphism(self.dst, self.src, comps)

    def content_key(self):
        return self.components

    def __repr__(self):
        return f"PresheafMorphism({self.components!r})"


def validate_presheaf_morphism(phi: PresheafMorphism) -> ValidationReport:
    fails = []
    c = phi.src.base
    for x, row in enumerate(phi.components):
        if len(row) != len(phi.src.at[x]) or any(
            not (0 <= v < len(phi.dst.at[x])) for v in row
        ):
            fails.append(ValidationFailure("morphism-typing", f"at object {x}"))
    if fails:
        return ValidationReport(tuple(fails))
    for m in c.morphisms:
        a, b = c.src(m), c.tgt(m)
        left = tuple(phi.components[a][phi.src.act[m][e]] for e in range(len(phi.src.at[b])))
        right = tuple(phi.dst.act[m][phi.components[b][e]] for e in range(len(phi.src.at[b])))
        if left != right:
            fails.append(ValidationFailure("broken-naturality", f"morphism {m}"))
    return ValidationReport(tuple(fails))


# -- representables ----------------------------------------------------------


def representable(c: FinCategory, a: int) -> Presheaf:
    """hom(-, a), with morphism ids as element labels."""
    at = [FinSet(f"m{m}" for m in c.hom(x, a)) for x in c.objects]
    index = [{m: i for i, m in enumerate(c.hom(x, a))} for x in c.objects]
    act = []
    for m in c.morphisms:
        x, y = c.src(m), c.tgt(m)
        act.append(tuple(index[x][c.compose(h, m)] for h in c.hom(y, a)))
    return Presheaf(c, at, act)


def yoneda_action(c: FinCategory, f: int) -> PresheafMorphism:
    """The map of representables hom(-, src f) -> hom(-, tgt f) given by postcomposition."""
    a, b = c.src(f), c.tgt(f)
    ya, yb = representable(c, a), representable(c, b)
    index_b = [{m: i for i, m in enumerate(c.hom(x, b))} for x in c.objects]
    comps = [
        tuple(index_b[x][c.compose(f, h)] for h in c.hom(x, a)) for x in c.objects
    ]
    return PresheafMorphism(ya, yb, comps)


def classifying_morphism(p: Presheaf, x: int, e: int) -> PresheafMorphism:
    """The unique map hom(-, x) -> p sending the identity of x to element e."""
    c = p.base
    yx = representable(c, x)
    comps = [tuple(p.act[m][e] for m in c.hom(w, x)) for w in c.objects]
    return PresheafMorphism(yx, p, comps)


# -- colimits ----------------------------------------------------------------


@dataclass
class FinSetDiagram:
    """Covariant diagram of finite sets: maps[m] sends D(src m) to D(tgt m)."""

    shape: FinCategory
    sets: tuple[FinSet, ...]
    maps: dict

    def validate(self) -> ValidationReport:
        fails = []
        for m in self.shape.morphisms:
            row = self.maps[m]
            if len(row) != len(self.sets[self.shape.src(m)]) or any(
                not (0 <= v < len(self.sets[self.shape.tgt(m)])) for v in row
            ):
                fails.append(ValidationFailure("diagram-typing", f"map[{m}]"))
        if fails:
            return ValidationReport(tuple(fails))
        for a in self.shape.objects:
            if tuple(self.maps[self.shape.id_of(a)]) != tuple(range(len(self.sets[a]))):
                fails.append(ValidationFailure("diagram-identity", f"at {a}"))
        for f in self.shape.morphisms:
            for g in self.shape.morphisms:
                if self.shape.tgt(f) != self.shape.src(g):
                    continue
                gf = self.shape.compose(g, f)
                comp = tuple(self.maps[g][self.maps[f][e]] for e in range(len(self.sets[self.shape.src(f)])))
                if comp != tuple(self.maps[gf]):
                    fails.append(ValidationFailure("non-functorial-diagram", f"g={g} f={f}"))
        return ValidationReport(tuple(fails))


@dataclass
class ColimitResult:
    set: FinSet
    coprojections: tuple  # per shape object: element -> class index
    reps: tuple  # per class: (shape object index, element index)
    merges: int


def colimit_finset(d: FinSetDiagram, budget: int | None = None) -> ColimitResult:
    """Colimit of a finite-set diagram by union-find.

    Classes are ordered, and represented, by their least member in the global
    enumeration that concatenates the sets in shape-object order.  This is the
    canonicalization every higher construction inherits.
    """
    sizes = [len(s) for s in d.sets]
    offsets = list(itertools.accumulate([0] + sizes))[:-1]
    total = sum(sizes)
    cap = element_budget() if budget is None else budget
    if total > cap:
        raise BudgetExceededError(f"colimit over {total} elements exceeds budget {cap}")

    parent = list(range(total))

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    merges = 0
    for m in d.shape.morphisms:
        a, b = d.shape.src(m), d.shape.tgt(m)
        row = d.maps[m]
        for e in range(sizes[a]):
            ra, rb = find(offsets[a] + e), find(offsets[b] + row[e])
            if ra != rb:
                # attach the larger root, so the root stays the least member
                lo, hi = (ra, rb) if ra < rb else (rb, ra)
                parent[hi] = lo
                merges += 1
    merge_counter.value += merges

    roots = sorted({find(i) for i in range(total)})
    class_of_root = {r: k for k, r in enumerate(roots)}
    copr = []
    for a in range(len(sizes)):
        copr.append(tuple(class_of_root[find(offsets[a] + e)] for e in range(sizes[a])))
    reps = []
    for r in roots:
        a = max(i for i, off in enumerate(offsets) if off <= r)
        reps.append((a, r - offsets[a]))
    out = FinSet(f"q{k}" for k in range(len(roots)))
    return ColimitResult(out, tuple(copr), tuple(reps), merges)


def coproduct_presheaves(ps) -> tuple[Presheaf, tuple]:
    """Pointwise disjoint union; returns the sum and the injections."""
    ps = list(ps)
    base = ps[0].base
    if any(p.base is not base and p.base != base for p in ps):
        raise SlotMismatchError("coproduct of presheaves on different bases")
    at = []
    offs = []  # per object: per summand offset
    for x in base.objects:
        labels = []
        off = []
        for i, p in enumerate(ps):
            off.append(len(labels))
            labels.extend(f"{i}:{l}" for l in p.at[x].labels)
        at.append(FinSet(labels))
        offs.append(off)
    act = []
    for m in base.morphisms:
        a, b = base.src(m), base.tgt(m)
        row = []
        for i, p in enumerate(ps):
            row.extend(offs[a][i] + v for v in p.act[m])
        act.append(tuple(row))
    total = Presheaf(base, at, act)
    injections = tuple(
        PresheafMorphism(
            p,
            total,
            [tuple(offs[x][i] + e for e in range(len(p.at[x]))) for x in base.objects],
        )
        for i, p in enumerate(ps)
    )
    return total, injections


def pointwise_colimit(shape: FinCategory, ps, maps) -> tuple[Presheaf, tuple]:
    """Colimit of a diagram of presheaves, computed objectwise.

    ps: presheaf per shape object; maps: PresheafMorphism per shape morphism.
    Returns the colimit presheaf and the coprojection morphisms.
    """
    base = ps[0].base
    results = []
    for x in base.objects:
        d = FinSetDiagram(
            shape,
            tuple(p.at[x] for p in ps),
            {m: maps[m].components[x] for m in shape.morphisms},
        )
        results.append(colimit_finset(d))
    at = [r.set for r in results]
    act = []
    for m in base.morphisms:
        a, b = base.src(m), base.tgt(m)
        row = []
        for i, t in results[b].reps:
            row.append(results[a].coprojections[i][ps[i].act[m][t]])
        act.append(tuple(row))
    colim = Presheaf(base, at, act)
    coprs = tuple(
        PresheafMorphism(ps[i], colim, [results[x].coprojections[i] for x in base.objects])
        for i in range(len(ps))
    )
    return colim, coprs


# -- category of elements ----------------------------------------------------


class ElementsCategory(FinCategory):
    """Category of elements of a presheaf.

    Objects are (object, element) pairs in lex order; there is an arrow
    (x, e) -> (x', e') for every base morphism m : x -> x' with act(m)(e') = e.
    """

    def __init__(self, p: Presheaf):
        self.presheaf = p
        c = p.base
        objs = [(x, e) for x in c.objects for e in range(len(p.at[x]))]
        self.el_objs = tuple(objs)
        self.el_index = {t: i for i, t in enumerate(objs)}
        arrows = []  # (m, e') in lex order
        for m in c.morphisms:
            for e2 in range(len(p.at[c.tgt(m)])):
                arrows.append((m, e2))
        self.el_arrows = tuple(arrows)
        self.arrow_index = {t: i for i, t in enumerate(arrows)}
        src = [self.el_index[(c.src(m), p.act[m][e2])] for m, e2 in arrows]
        tgt = [self.el_index[(c.tgt(m), e2)] for m, e2 in arrows]
        ident = [self.arrow_index[(c.id_of(x), e)] for x, e in objs]
        comp = {}
        for gi, (m2, e3) in enumerate(arrows):
            for fi, (m1, e2) in enumerate(arrows):
                if c.tgt(m1) == c.src(m2) and e2 == p.act[m2][e3]:
                    comp[(gi, fi)] = self.arrow_index[(c.compose(m2, m1), e3)]
        super().__init__(f"El({c.name})", len(objs), src, tgt, ident, comp)

    @property
    def projection(self) -> FunctorTable:
        return FunctorTable.unary(
            self,
            self.presheaf.base,
            [x for x, _ in self.el_objs],
            [m for m, _ in self.el_arrows],
            name="pr",
        )


def category_of_elements(p: Presheaf) -> ElementsCategory:
    cached = getattr(p, "_elements", None)
    if cached is None:
        cached = ElementsCategory(p)
        p._elements = cached
    return cached


# -- enumeration of natural transformations -----------------------------------


def enumerate_nat_trans(p: Presheaf, q: Presheaf, budget: int = 10**6):
    """All presheaf morphisms p -> q, by exhaustive search.

    Fails loudly (BudgetExceededError) if the candidate space outgrows the
    budget; this function is used as an oracle and must never sample.
    """
    c = p.base
    count = 1
    for x in c.objects:
        sp, sq = len(p.at[x]), len(q.at[x])
        if sp > 0 and sq == 0:
            return []
        count *= sq**sp
        if count > budget:
            raise BudgetExceededError(
                f"enumerate_nat_trans candidate space exceeds budget {budget}"
            )
    per_object = [
        list(itertools.product(range(len(q.at[x])), repeat=len(p.at[x])))
        for x in c.objects
    ]
    found = []
    for comps in itertools.product(*per_object):
        ok = True
        for m in c.morphisms:
            a, b = c.src(m), c.tgt(m)
            for e in range(len(p.at[b])):
                if comps[a][p.act[m][e]] != q.act[m][comps[b][e]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(PresheafMorphism(p, q, comps))
    return found


# -- the fixed sampling family -------------------------------------------------


def sample_presheaves(c: FinCategory):
    """The documented SAMPLE family on a base category.

    In order: every representable; the binary coproducts of the first two
    object pairs (lex, with repetition); one union-find quotient, namely the
    pushout of two copies of y_(tgt m) along y_(src m) for the least
    non-identity morphism m (or along y_0 with identities if none exists).
    """
    family = [representable(c, a) for a in c.objects]
    pairs = list(itertools.combinations_with_replacement(range(c.n_objects), 2))[:2]
    for a, b in pairs:
        s, _ = coproduct_presheaves([representable(c, a), representable(c, b)])
        family.append(s)
    # span morphisms: ids 0,1,2 on objects 0,1,2; 3: 0->1; 4: 0->2
    span = FinCategory(
        "span",
        3,
        [0, 1, 2, 0, 0],
        [0, 1, 2, 1, 2],
        [0, 1, 2],
        {
            (0, 0): 0, (1, 1): 1, (2, 2): 2,
            (3, 0): 3, (4, 0): 4, (1, 3): 3, (2, 4): 4,
        },
    )
    m = next((m for m in c.morphisms if not c.is_identity(m)), None)
    if m is None:
        mid = left = right = representable(c, 0)
        l = r = PresheafMorphism.identity(mid)
    else:
        mid = representable(c, c.src(m))
        left = right = representable(c, c.tgt(m))
        l = r = yoneda_action(c, m)
    colim, _ = pointwise_colimit(
        span,
        [mid, left, right],
        {
            0: PresheafMorphism.identity(mid),
            1: PresheafMorphism.identity(left),
            2: PresheafMorphism.identity(right),
            3: l,
            4: r,
        },
    )
    family.append(colim)
    return family
