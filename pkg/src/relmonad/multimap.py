"""Maps with several input slots landing in presheaves, and cells between them.

A MultiMap takes one argument per slot and evaluates to a presheaf on its
codomain category.  A slot is either 'fin' (the argument is an object of a
finite category, acted on by its morphisms) or 'psh' (the argument is itself a
presheaf on a finite category, acted on by presheaf morphisms).  Maps form a
substitution algebra: compose_at plugs a map into a psh slot and a functor
table into a fin slot.

A TwoCell is a family of presheaf morphisms between the evaluations of two
parallel maps, one per argument tuple, built lazily and memoized.  Vertical
composition asserts at every seam that the adjacent evaluations agree table
for table; that assertion is what backs the convention of treating the
reassociation isomorphisms of substitution as identities.

two_cell_equal decides equality of parallel cells.  The 'transpose' policy
removes psh slots one at a time by plugging in the unit map, which is a
complete check whenever the common source map is, in that slot, a pointwise
extension along the unit (tracked syntactically through certified_slots), and
then compares exhaustively.  The 'sample' policy compares on the documented
family of probe presheaves instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotInvertibleError, SlotMismatchError, TransposeInapplicableError
from .fincat import FinCategory, FunctorTable, NatTransTable, ValidationFailure, ValidationReport
from .presheaf import (
    FinSet,
    Presheaf,
    PresheafMorphism,
    sample_presheaves,
    validate_presheaf,
    validate_presheaf_morphism,
)


@dataclass(frozen=True)
class Slot:
    kind: str  # 'fin' or 'psh'
    cat: FinCategory


class MultiMap:
    """Base class: memoized evaluation at objects and one-slot morphisms.

    Subclasses implement _value(args) and _mor_at(args, j, m).  Memoization
    returns the same Presheaf / PresheafMorphism instance per key, which keeps
    uid-based memo keys stable all the way up a tree of maps.
    """

    def __init__(self, slots, cod: FinCategory, name: str):
        self.slots = tuple(slots)
        self.cod = cod
        self.name = name
        self._val_memo = {}
        self._mor_memo = {}

    @property
    def arity(self) -> int:
        return len(self.slots)

    def signature(self):
        return (
            tuple((s.kind, s.cat.content_key()) for s in self.slots),
            self.cod.content_key(),
        )

    def psh_slot_indices(self):
        return tuple(i for i, s in enumerate(self.slots) if s.kind == "psh")

    def certified_slots(self) -> frozenset:
        """Psh slots in which this map is a pointwise extension along the unit."""
        return frozenset()

    def arg_key(self, args):
        if len(args) != self.arity:
            raise SlotMismatchError(
                f"{self.name}: got {len(args)} arguments for arity {self.arity}"
            )
        key = []
        for s, a in zip(self.slots, args):
            if s.kind == "fin":
                key.append(a)
            else:
                key.append(("p", a.uid))
        return tuple(key)

    def evaluate(self, args) -> Presheaf:
        args = tuple(args)
        key = self.arg_key(args)
        hit = self._val_memo.get(key)
        if hit is None:
            hit = self._value(args)
            self._val_memo[key] = hit
        return hit

    def morphism_at(self, args, j, m) -> PresheafMorphism:
        """Functorial action of one morphism in slot j, objects elsewhere.

        args[j] is normalized to the source of m, so callers may pass either
        endpoint there.
        """
        args = tuple(args)
        slot = self.slots[j]
        if slot.kind == "fin":
            args = args[:j] + (slot.cat.src(m),) + args[j + 1 :]
            mkey = m
        else:
            args = args[:j] + (m.src,) + args[j + 1 :]
            mkey = ("p", m.uid)
        key = (self.arg_key(args), j, mkey)
        hit = self._mor_memo.get(key)
        if hit is None:
            hit = self._mor_at(args, j, m)
            self._mor_memo[key] = hit
        return hit

    def _value(self, args) -> Presheaf:
        raise NotImplementedError

    def _mor_at(self, args, j, m) -> PresheafMorphism:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"


class TableMap(MultiMap):
    """A map given by explicit tables; every slot is 'fin'.

    sets[(b1,...,bn, y)] is the value FinSet; cod_act[(b1,...,bn, m)] is the
    contravariant action of the codomain morphism m; slot_act[(j, args-with-m
    -at-slot-j, y)] is the covariant action of slot morphism m at codomain
    object y.
    """

    def __init__(self, slot_cats, cod, sets, cod_act, slot_act, name="F"):
        super().__init__([Slot("fin", c) for c in slot_cats], cod, name)
        self.sets = sets
        self.cod_act = cod_act
        self.slot_act = slot_act

    def _value(self, args):
        at = [self.sets[args + (y,)] for y in self.cod.objects]
        act = [self.cod_act[args + (m,)] for m in self.cod.morphisms]
        return Presheaf(self.cod, at, act)

    def _mor_at(self, args, j, m):
        cat = self.slots[j].cat
        dst_args = args[:j] + (cat.tgt(m),) + args[j + 1 :]
        marked = args[:j] + (m,) + args[j + 1 :]
        comps = [self.slot_act[(j,) + marked + (y,)] for y in self.cod.objects]
        return PresheafMorphism(self.evaluate(args), self.evaluate(dst_args), comps)


class UnitMap(MultiMap):
    """The unary map sending an object to its representable presheaf."""

    def __init__(self, cat: FinCategory):
        super().__init__([Slot("fin", cat)], cat, f"unit_{cat.name}")
        self.cat = cat
        # hom-position index per (object, target): morphism id -> slot in hom list
        self._pos = {}
        for x in cat.objects:
            for b in cat.objects:
                for i, h in enumerate(cat.hom(x, b)):
                    self._pos[(x, b, h)] = i

    def _value(self, args):
        (a,) = args
        c = self.cat
        at = [FinSet(f"m{h}" for h in c.hom(x, a)) for x in c.objects]
        act = []
        for m in c.morphisms:
            x, y = c.src(m), c.tgt(m)
            act.append(tuple(self._pos[(x, a, c.compose(h, m))] for h in c.hom(y, a)))
        return Presheaf(c, at, act)

    def _mor_at(self, args, j, m):
        c = self.cat
        a, b = c.src(m), c.tgt(m)
        pa, pb = self.evaluate((a,)), self.evaluate((b,))
        comps = [
            tuple(self._pos[(x, b, c.compose(m, h))] for h in c.hom(x, a))
            for x in c.objects
        ]
        return PresheafMorphism(pa, pb, comps)

    def element_of_identity(self, a) -> int:
        """Index of id_a inside the value at (a,), at object a."""
        return self._pos[(a, a, self.cat.id_of(a))]


class IdentityMap(MultiMap):
    """The unary map on a single psh slot that returns its argument."""

    def __init__(self, cat: FinCategory):
        super().__init__([Slot("psh", cat)], cat, f"1_{cat.name}")
        self.cat = cat

    def certified_slots(self):
        return frozenset({0})

    def _value(self, args):
        return args[0]

    def _mor_at(self, args, j, m):
        return m


_unit_cache: dict = {}
_identity_cache: dict = {}


def unit_map(cat: FinCategory) -> UnitMap:
    """Interned UnitMap per category, so memo keys stay warm across cells."""
    key = cat.content_key()
    if key not in _unit_cache:
        _unit_cache[key] = UnitMap(cat)
    return _unit_cache[key]


def identity_map(cat: FinCategory) -> IdentityMap:
    key = cat.content_key()
    if key not in _identity_cache:
        _identity_cache[key] = IdentityMap(cat)
    return _identity_cache[key]


class ComposeMap(MultiMap):
    """Plug map g into psh slot j of map f."""

    def __init__(self, f: MultiMap, j: int, g: MultiMap):
        if not (0 <= j < f.arity) or f.slots[j].kind != "psh":
            raise SlotMismatchError(f"{f.name}: slot {j} is not a psh slot")
        if g.cod != f.slots[j].cat:
            raise SlotMismatchError(
                f"codomain of {g.name} does not match slot {j} of {f.name}"
            )
        slots = f.slots[:j] + g.slots + f.slots[j + 1 :]
        super().__init__(slots, f.cod, f"({f.name} o{j} {g.name})")
        self.f, self.j, self.g = f, j, g

    def certified_slots(self):
        f, j, g = self.f, self.j, self.g
        cf = f.certified_slots()
        out = {k for k in cf if k < j}
        out |= {k + g.arity - 1 for k in cf if k > j}
        if j in cf:
            out |= {j + k for k in g.certified_slots()}
        return frozenset(out)

    def _f_args(self, args):
        j, n = self.j, self.g.arity
        inner = self.g.evaluate(args[j : j + n])
        return args[:j] + (inner,) + args[j + n :]

    def _value(self, args):
        return self.f.evaluate(self._f_args(args))

    def _mor_at(self, args, k, m):
        j, n = self.j, self.g.arity
        if k < j:
            return self.f.morphism_at(self._f_args(args), k, m)
        if k < j + n:
            psi = self.g.morphism_at(args[j : j + n], k - j, m)
            return self.f.morphism_at(self._f_args(args), j, psi)
        return self.f.morphism_at(self._f_args(args), k - n + 1, m)


class ComposeFinMap(MultiMap):
    """Plug a functor table into fin slot j of map f."""

    def __init__(self, f: MultiMap, j: int, F: FunctorTable):
        if not (0 <= j < f.arity) or f.slots[j].kind != "fin":
            raise SlotMismatchError(f"{f.name}: slot {j} is not a fin slot")
        if F.dst != f.slots[j].cat:
            raise SlotMismatchError(
                f"target of {F.name} does not match slot {j} of {f.name}"
            )
        slots = f.slots[:j] + tuple(Slot("fin", s) for s in F.slots) + f.slots[j + 1 :]
        super().__init__(slots, f.cod, f"({f.name} o{j} {F.name})")
        self.f, self.j, self.F = f, j, F

    def certified_slots(self):
        j, n = self.j, self.F.arity
        cf = self.f.certified_slots()
        return frozenset(
            {k for k in cf if k < j} | {k + n - 1 for k in cf if k > j}
        )

    def _f_args(self, args):
        j, n = self.j, self.F.arity
        return args[:j] + (self.F.apply_obj(args[j : j + n]),) + args[j + n :]

    def _value(self, args):
        return self.f.evaluate(self._f_args(args))

    def _mor_at(self, args, k, m):
        j, n = self.j, self.F.arity
        if k < j:
            return self.f.morphism_at(self._f_args(args), k, m)
        if k < j + n:
            seg = args[j : j + n]
            ids = tuple(
                m if i == k - j else s.cat.id_of(seg[i])
                for i, s in enumerate(self.slots[j : j + n])
            )
            return self.f.morphism_at(self._f_args(args), j, self.F.apply_mor(ids))
        return self.f.morphism_at(self._f_args(args), k - n + 1, m)


def compose_at(f: MultiMap, j: int, g) -> MultiMap:
    """Substitution: a MultiMap into a psh slot, a FunctorTable into a fin slot."""
    if isinstance(g, FunctorTable):
        return ComposeFinMap(f, j, g)
    return ComposeMap(f, j, g)


def validate_multimap(m: MultiMap) -> ValidationReport:
    """Exhaustive law check for a map whose slots are all 'fin'.

    Checks every evaluation is a presheaf, every slot action is natural,
    slot actions are functorial, and actions in distinct slots commute.
    """
    if any(s.kind != "fin" for s in m.slots):
        raise SlotMismatchError("validate_multimap requires all-fin slots")
    fails = []
    spaces = [list(s.cat.objects) for s in m.slots]
    for args in itertools.product(*spaces):
        r = validate_presheaf(m.evaluate(args))
        if not r.ok:
            fails.append(ValidationFailure(r.first.law, f"args={args}: {r.first.witness}"))
    for j, s in enumerate(m.slots):
        others = spaces[:j] + [[None]] + spaces[j + 1 :]
        for pre in itertools.product(*others):
            for mor in s.cat.morphisms:
                args = pre[:j] + (s.cat.src(mor),) + pre[j + 1 :]
                phi = m.morphism_at(args, j, mor)
                r = validate_presheaf_morphism(phi)
                if not r.ok:
                    fails.append(
                        ValidationFailure(
                            r.first.law, f"slot {j} mor {mor} args={args}"
                        )
                    )
            for a in s.cat.objects:
                args = pre[:j] + (a,) + pre[j + 1 :]
                ida = m.morphism_at(args, j, s.cat.id_of(a))
                if ida.components != PresheafMorphism.identity(m.evaluate(args)).components:
                    fails.append(ValidationFailure("slot-identity", f"slot {j} args={args}"))
            for f1 in s.cat.morphisms:
                for f2 in s.cat.morphisms:
                    if s.cat.tgt(f1) != s.cat.src(f2):
                        continue
                    args = pre[:j] + (s.cat.src(f1),) + pre[j + 1 :]
                    one = m.morphism_at(args, j, f1).then(
                        m.morphism_at(args[:j] + (s.cat.tgt(f1),) + args[j + 1 :], j, f2)
                    )
                    both = m.morphism_at(args, j, s.cat.compose(f2, f1))
                    if one.components != both.components:
                        fails.append(
                            ValidationFailure(
                                "slot-composition", f"slot {j} {f2} o {f1} args={args}"
                            )
                        )
    for j in range(m.arity):
        for k in range(j + 1, m.arity):
            cj, ck = m.slots[j].cat, m.slots[k].cat
            others = [
                spaces[i] if i not in (j, k) else [None] for i in range(m.arity)
            ]
            for pre in itertools.product(*others):
                for mj in cj.morphisms:
                    for mk in ck.morphisms:
                        base = list(pre)
                        base[j], base[k] = cj.src(mj), ck.src(mk)
                        base = tuple(base)
                        jk = m.morphism_at(base, j, mj).then(
                            m.morphism_at(
                                base[:j] + (cj.tgt(mj),) + base[j + 1 :], k, mk
                            )
                        )
                        kj = m.morphism_at(base, k, mk).then(
                            m.morphism_at(
                                base[:k] + (ck.tgt(mk),) + base[k + 1 :], j, mj
                            )
                        )
                        if jk.components != kj.components:
                            fails.append(
                                ValidationFailure(
                                    "slot-commutation",
                                    f"slots {j},{k} mors {mj},{mk} args={base}",
                                )
                            )
    return ValidationReport(tuple(fails))


# -- two-cells ----------------------------------------------------------------


class TwoCell:
    """A family of presheaf morphisms src.evaluate(args) -> dst.evaluate(args)."""

    def __init__(self, src: MultiMap, dst: MultiMap, fn, name="cell"):
        if src.signature() != dst.signature():
            raise SlotMismatchError(f"cell {name}: endpoint signatures differ")
        self.src = src
        self.dst = dst
        self._fn = fn
        self.name = name
        self._memo = {}

    def component(self, args) -> PresheafMorphism:
        args = tuple(args)
        key = self.src.arg_key(args)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._fn(args)
            self._memo[key] = hit
        return hit

    def __repr__(self):
        return f"TwoCell({self.name!r}: {self.src.name} => {self.dst.name})"


def identity_cell(f: MultiMap) -> TwoCell:
    return TwoCell(
        f, f, lambda args: PresheafMorphism.identity(f.evaluate(args)), name=f"1[{f.name}]"
    )


def vcomp(*cells) -> TwoCell:
    """Vertical composite, left to right; asserts seams agree bit for bit."""
    if not cells:
        raise SlotMismatchError("vcomp of no cells")
    if len(cells) == 1:
        return cells[0]

    def fn(args):
        cur = cells[0].component(args)
        for c in cells[1:]:
            nxt = c.component(args)
            if cur.dst.content_key() != nxt.src.content_key():
                raise SlotMismatchError(
                    f"seam mismatch composing {c.name} after previous cell"
                )
            cur = cur.then(nxt)
        return cur

    return TwoCell(cells[0].src, cells[-1].dst, fn, name=".".join(c.name for c in cells))


def inverse_cell(cell: TwoCell) -> TwoCell:
    def fn(args):
        phi = cell.component(args)
        if not phi.is_bijection():
            raise NotInvertibleError(f"{cell.name} is not invertible at {args}")
        return phi.inverse()

    return TwoCell(cell.dst, cell.src, fn, name=f"inv[{cell.name}]")


def whisker_inner(cell: TwoCell, j: int, g) -> TwoCell:
    """Plug a map (or functor table) into slot j of both endpoints of a cell."""
    src = compose_at(cell.src, j, g)
    dst = compose_at(cell.dst, j, g)
    n = g.arity

    if isinstance(g, FunctorTable):
        def fn(args):
            inner = g.apply_obj(args[j : j + n])
            return cell.component(args[:j] + (inner,) + args[j + n :])
    else:
        def fn(args):
            inner = g.evaluate(args[j : j + n])
            return cell.component(args[:j] + (inner,) + args[j + n :])

    return TwoCell(src, dst, fn, name=f"({cell.name} o{j} {g.name})")


def whisker_outer(f: MultiMap, j: int, cell: TwoCell) -> TwoCell:
    """Apply f's functorial action in psh slot j to a cell between inner maps."""
    src = ComposeMap(f, j, cell.src)
    dst = ComposeMap(f, j, cell.dst)
    n = cell.src.arity

    def fn(args):
        psi = cell.component(args[j : j + n])
        inner = cell.src.evaluate(args[j : j + n])
        return f.morphism_at(args[:j] + (inner,) + args[j + n :], j, psi)

    return TwoCell(src, dst, fn, name=f"({f.name} o{j} {cell.name})")


def whisker_outer_fin(f: MultiMap, j: int, nat: NatTransTable) -> TwoCell:
    """Apply f's action in fin slot j to a natural transformation of tables."""
    src = ComposeFinMap(f, j, nat.src)
    dst = ComposeFinMap(f, j, nat.dst)
    n = nat.src.arity

    def fn(args):
        seg = args[j : j + n]
        inner = nat.src.apply_obj(seg)
        return f.morphism_at(args[:j] + (inner,) + args[j + n :], j, nat.at(seg))

    return TwoCell(src, dst, fn, name=f"({f.name} o{j} {nat!r})")


def retree(cell: TwoCell, src: MultiMap, dst: MultiMap, name=None) -> TwoCell:
    """Re-declare a cell's endpoint trees.

    Substitution and extension commute at distinct slots table-for-table, so
    differently bracketed trees evaluate identically; this swaps in the
    bracketing a caller wants to compose against.  Every component is checked
    against the declared endpoints, so an unequal retree cannot slip through.
    """

    def fn(args):
        phi = cell.component(args)
        s, d = src.evaluate(args), dst.evaluate(args)
        if (
            phi.src.content_key() != s.content_key()
            or phi.dst.content_key() != d.content_key()
        ):
            raise SlotMismatchError(f"retree of {cell.name}: evaluation disagrees")
        return PresheafMorphism(s, d, phi.components)

    return TwoCell(src, dst, fn, name=name or cell.name)


def whisker_outer_many(f: MultiMap, cells: dict) -> TwoCell:
    """Plug a cell into each of several psh slots of f, one slot at a time.

    Only unary inner maps are supported, which keeps slot indices stable.
    """
    slots = sorted(cells)
    for s in slots:
        if cells[s].src.arity != 1:
            raise SlotMismatchError("whisker_outer_many needs unary inner cells")
    steps = []
    for s in slots:
        step = whisker_outer(f, s, cells[s])
        for s2 in slots:
            if s2 == s:
                continue
            inner = cells[s2].dst if s2 < s else cells[s2].src
            step = whisker_inner(step, s2, inner)
        steps.append(step)
    return vcomp(*steps)


def plug_many(f: MultiMap, inners: dict) -> MultiMap:
    """Substitute a unary map into each listed psh slot, ascending."""
    out = f
    for s in sorted(inners):
        out = ComposeMap(out, s, inners[s])
    return out


# -- deciding equality of parallel cells --------------------------------------


@dataclass(frozen=True)
class CellComparison:
    equal: bool
    policy: str
    checked: int  # argument tuples compared
    witness: tuple | None  # (args, object, element, lhs, rhs) on failure


def cells_parallel(a: TwoCell, b: TwoCell) -> bool:
    return a.src.signature() == b.src.signature() and a.dst.signature() == b.dst.signature()


def _compare_exhaustive(a: TwoCell, b: TwoCell, spaces, policy) -> CellComparison:
    checked = 0
    for args in itertools.product(*spaces):
        pa = a.component(args)
        pb = b.component(args)
        checked += 1
        if pa.components != pb.components:
            for y, (ra, rb) in enumerate(zip(pa.components, pb.components)):
                for e, (va, vb) in enumerate(zip(ra, rb)):
                    if va != vb:
                        return CellComparison(False, policy, checked, (args, y, e, va, vb))
            # differing shapes with no pointwise witness: report the tuple
            return CellComparison(False, policy, checked, (args, None, None, None, None))
    return CellComparison(True, policy, checked, None)


def two_cell_equal(a: TwoCell, b: TwoCell, policy: str = "transpose") -> CellComparison:
    """Decide whether two parallel cells are equal.

    'transpose': repeatedly plug the unit map into the leftmost psh slot
    (raising TransposeInapplicableError if the common source is not a
    pointwise extension there), then compare at every object tuple.  Complete
    for sources built from strengthenings, identities, and units.

    'sample': compare at every object tuple for fin slots and at the
    documented probe family for psh slots.
    """
    if not cells_parallel(a, b):
        raise SlotMismatchError("two_cell_equal on non-parallel cells")
    if policy == "transpose":
        while True:
            psh = a.src.psh_slot_indices()
            if not psh:
                break
            i = psh[0]
            if i not in a.src.certified_slots():
                raise TransposeInapplicableError(
                    f"slot {i} of {a.src.name} is not a certified extension slot"
                )
            u = unit_map(a.src.slots[i].cat)
            a = whisker_inner(a, i, u)
            b = whisker_inner(b, i, u)
        spaces = [list(s.cat.objects) for s in a.src.slots]
        return _compare_exhaustive(a, b, spaces, "transpose")
    if policy == "sample":
        spaces = [
            list(s.cat.objects) if s.kind == "fin" else sample_presheaves(s.cat)
            for s in a.src.slots
        ]
        return _compare_exhaustive(a, b, spaces, "sample")
    raise ValueError(f"unknown policy {policy!r}")
