"""Finite categories, functors, and natural transformations as integer tables.

Objects and morphisms are dense integer ids.  A category is given by source
and target arrays, an identity id per object, and a total composition table
on exactly the composable pairs.  Everything is immutable after construction
and all derived orderings (hom lists, product enumeration) are deterministic
functions of the tables, which the rest of the package relies on for
bit-identical reruns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SlotMismatchError


@dataclass(frozen=True)
class ValidationFailure:
    law: str
    witness: str


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[ValidationFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first(self) -> ValidationFailure | None:
        return self.failures[0] if self.failures else None

    def raise_if_failed(self) -> None:
        if self.failures:
            f = self.failures[0]
            raise SlotMismatchError(f"{f.law}: {f.witness}")


class FinCategory:
    """A finite category as dense integer tables.

    comp maps (g, f) -> g after f, defined exactly when tgt(f) == src(g).
    """

    def __init__(self, name, n_objects, mor_src, mor_tgt, identity, comp):
        self.name = name
        self.n_objects = n_objects
        self.mor_src = tuple(mor_src)
        self.mor_tgt = tuple(mor_tgt)
        self.identity = tuple(identity)
        self.comp = dict(comp)
        self.n_morphisms = len(self.mor_src)
        hom = {}
        for m in range(self.n_morphisms):
            hom.setdefault((self.mor_src[m], self.mor_tgt[m]), []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._key = None

    # -- accessors ---------------------------------------------------------

    @property
    def objects(self):
        return range(self.n_objects)

    @property
    def morphisms(self):
        return range(self.n_morphisms)

    def src(self, m):
        return self.mor_src[m]

    def tgt(self, m):
        return self.mor_tgt[m]

    def id_of(self, a):
        return self.identity[a]

    def is_identity(self, m):
        return self.identity[self.mor_src[m]] == m and self.mor_src[m] == self.mor_tgt[m]

    def hom(self, a, b):
        return self._hom.get((a, b), ())

    def compose(self, g, f):
        """g after f; raises KeyError on non-composable pairs."""
        return self.comp[(g, f)]

    # -- structural identity -------------------------------------------------

    def content_key(self):
        if self._key is None:
            self._key = (
                self.n_objects,
                self.mor_src,
                self.mor_tgt,
                self.identity,
                tuple(sorted(self.comp.items())),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, FinCategory) and self.content_key() == other.content_key()

    def __hash__(self):
        return hash(self.content_key())

    def __repr__(self):
        return f"FinCategory({self.name!r}, obj={self.n_objects}, mor={self.n_morphisms})"


def validate_category(c: FinCategory) -> ValidationReport:
    """Exhaustive check of the category laws; returns every violation found.

    Violation law names: missing-composite, spurious-composite, bad-identity,
    broken-identity, broken-associativity, bad-typing.
    """
    fails = []
    for a in c.objects:
        i = c.identity[a]
        if not (0 <= i < c.n_morphisms and c.mor_src[i] == a and c.mor_tgt[i] == a):
            fails.append(ValidationFailure("bad-identity", f"obj {a} has identity {i}"))
    for (g, f), gf in c.comp.items():
        if c.mor_tgt[f] != c.mor_src[g]:
            fails.append(ValidationFailure("spurious-composite", f"comp({g},{f}) defined but not composable"))
        elif not (c.mor_src[gf] == c.mor_src[f] and c.mor_tgt[gf] == c.mor_tgt[g]):
            fails.append(ValidationFailure("bad-typing", f"comp({g},{f})={gf} has wrong endpoints"))
    for f in c.morphisms:
        for g in c.morphisms:
            if c.mor_tgt[f] == c.mor_src[g] and (g, f) not in c.comp:
                fails.append(ValidationFailure("missing-composite", f"comp({g},{f}) undefined"))
    if fails:
        return ValidationReport(tuple(fails))
    for f in c.morphisms:
        if c.comp[(f, c.identity[c.mor_src[f]])] != f:
            fails.append(ValidationFailure("broken-identity", f"{f} o id != {f}"))
        if c.comp[(c.identity[c.mor_tgt[f]], f)] != f:
            fails.append(ValidationFailure("broken-identity", f"id o {f} != {f}"))
    for f in c.morphisms:
        for g in c.morphisms:
            if c.mor_tgt[f] != c.mor_src[g]:
                continue
            gf = c.comp[(g, f)]
            for h in c.morphisms:
                if c.mor_tgt[g] != c.mor_src[h]:
                    continue
                if c.comp[(h, gf)] != c.comp[(c.comp[(h, g)], f)]:
                    fails.append(
                        ValidationFailure(
                            "broken-associativity", f"(h={h}, g={g}, f={f})"
                        )
                    )
    return ValidationReport(tuple(fails))


def opposite_category(c: FinCategory) -> FinCategory:
    """Same object and morphism ids, sources and targets swapped.

    Applying it twice gives back bit-identical tables.
    """
    comp = {(f, g): gf for (g, f), gf in c.comp.items()}
    return FinCategory(f"{c.name}^op", c.n_objects, c.mor_tgt, c.mor_src, c.identity, comp)


class ProductCategory(FinCategory):
    """Product of finitely many categories, objects/morphisms in lex order.

    The lex enumeration makes flattening associative on the nose: the tables
    of product([A, B, C]) and product([product([A, B]), C]) agree bit for bit
    once the latter's paired indices are read as flat triples.
    """

    def __init__(self, factors, name=None):
        self.factors = tuple(factors)
        obj_tuples = list(itertools.product(*(f.objects for f in self.factors)))
        mor_tuples = list(itertools.product(*(f.morphisms for f in self.factors)))
        self._obj_index = {t: i for i, t in enumerate(obj_tuples)}
        self._mor_index = {t: i for i, t in enumerate(mor_tuples)}
        self._obj_tuples = obj_tuples
        self._mor_tuples = mor_tuples
        src = [self._obj_index[tuple(f.src(m) for f, m in zip(self.factors, ms))] for ms in mor_tuples]
        tgt = [self._obj_index[tuple(f.tgt(m) for f, m in zip(self.factors, ms))] for ms in mor_tuples]
        ident = [
            self._mor_index[tuple(f.id_of(a) for f, a in zip(self.factors, os))]
            for os in obj_tuples
        ]
        comp = {}
        for gi, gs in enumerate(mor_tuples):
            for fi, fs in enumerate(mor_tuples):
                if all(f.tgt(fm) == f.src(gm) for f, gm, fm in zip(self.factors, gs, fs)):
                    comp[(gi, fi)] = self._mor_index[
                        tuple(f.compose(gm, fm) for f, gm, fm in zip(self.factors, gs, fs))
                    ]
        super().__init__(
            name or "(" + " x ".join(f.name for f in self.factors) + ")",
            len(obj_tuples),
            src,
            tgt,
            ident,
            comp,
        )

    def obj_tuple(self, i):
        return self._obj_tuples[i]

    def obj_index(self, t):
        return self._obj_index[tuple(t)]

    def mor_tuple(self, i):
        return self._mor_tuples[i]

    def mor_index(self, t):
        return self._mor_index[tuple(t)]


def product_category(factors, name=None) -> ProductCategory:
    return ProductCategory(factors, name)


class FunctorTable:
    """A functor from a finite product of finite categories to a finite category.

    slots is the list of source factors (possibly empty: a point of dst, or a
    single factor: an ordinary functor).  obj_map/mor_map are keyed by tuples
    of per-factor ids and are total.
    """

    def __init__(self, slots, dst, obj_map, mor_map, name="F"):
        self.slots = tuple(slots)
        self.dst = dst
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name

    @property
    def arity(self):
        return len(self.slots)

    def apply_obj(self, objs):
        return self.obj_map[tuple(objs)]

    def apply_mor(self, mors):
        return self.mor_map[tuple(mors)]

    @staticmethod
    def unary(src, dst, obj_list, mor_list, name="F"):
        return FunctorTable(
            (src,),
            dst,
            {(a,): o for a, o in enumerate(obj_list)},
            {(m,): x for m, x in enumerate(mor_list)},
            name,
        )

    @staticmethod
    def identity(c):
        return FunctorTable.unary(c, c, list(c.objects), list(c.morphisms), name=f"1_{c.name}")

    @staticmethod
    def point(dst, obj, name="pt"):
        """Arity-0 functor: a chosen object of dst."""
        return FunctorTable((), dst, {(): obj}, {(): dst.id_of(obj)}, name)

    def content_key(self):
        return (
            tuple(s.content_key() for s in self.slots),
            self.dst.content_key(),
            tuple(sorted(self.obj_map.items())),
            tuple(sorted(self.mor_map.items())),
        )

    def __repr__(self):
        return f"FunctorTable({self.name!r}, arity={self.arity}, dst={self.dst.name!r})"


def validate_functor(F: FunctorTable) -> ValidationReport:
    """Identities, typing, and functoriality on all composable morphism tuples."""
    fails = []
    for objs in itertools.product(*(s.objects for s in F.slots)):
        ids = tuple(s.id_of(a) for s, a in zip(F.slots, objs))
        if F.mor_map.get(ids) != F.dst.id_of(F.obj_map[objs]):
            fails.append(ValidationFailure("functor-identity", f"at {objs}"))
    for ms, m_img in F.mor_map.items():
        srcs = tuple(s.src(m) for s, m in zip(F.slots, ms))
        tgts = tuple(s.tgt(m) for s, m in zip(F.slots, ms))
        if F.dst.src(m_img) != F.obj_map[srcs] or F.dst.tgt(m_img) != F.obj_map[tgts]:
            fails.append(ValidationFailure("functor-typing", f"at {ms}"))
    if fails:
        return ValidationReport(tuple(fails))
    all_mors = list(F.mor_map)
    for fs in all_mors:
        for gs in all_mors:
            if all(s.tgt(f) == s.src(g) for s, g, f in zip(F.slots, gs, fs)):
                comp = tuple(s.compose(g, f) for s, g, f in zip(F.slots, gs, fs))
                if F.mor_map[comp] != F.dst.compose(F.mor_map[gs], F.mor_map[fs]):
                    fails.append(ValidationFailure("functor-composition", f"g={gs} f={fs}"))
    return ValidationReport(tuple(fails))


def compose_functor(f: FunctorTable, i: int, g: FunctorTable) -> FunctorTable:
    """Substitute g into slot i of f (functor tables compose strictly)."""
    if not (0 <= i < f.arity):
        raise SlotMismatchError(f"slot {i} out of range for arity {f.arity}")
    if g.dst is not f.slots[i] and g.dst != f.slots[i]:
        raise SlotMismatchError("codomain of g does not match slot i of f")
    slots = f.slots[:i] + g.slots + f.slots[i + 1 :]
    obj_map = {}
    for objs in itertools.product(*(s.objects for s in slots)):
        inner = g.apply_obj(objs[i : i + g.arity])
        obj_map[objs] = f.apply_obj(objs[:i] + (inner,) + objs[i + g.arity :])
    mor_map = {}
    for ms in itertools.product(*(s.morphisms for s in slots)):
        inner = g.apply_mor(ms[i : i + g.arity])
        mor_map[ms] = f.apply_mor(ms[:i] + (inner,) + ms[i + g.arity :])
    return FunctorTable(slots, f.dst, obj_map, mor_map, name=f"{f.name}o_{i}{g.name}")


class NatTransTable:
    """A natural transformation between parallel functor tables."""

    def __init__(self, src: FunctorTable, dst: FunctorTable, components):
        self.src = src
        self.dst = dst
        self.components = dict(components)  # object tuple -> morphism id of dst

    def at(self, objs):
        return self.components[tuple(objs)]

    def content_key(self):
        return tuple(sorted(self.components.items()))


def validate_nat_trans(t: NatTransTable) -> ValidationReport:
    fails = []
    F, G = t.src, t.dst
    for objs, m in t.components.items():
        if F.dst.src(m) != F.apply_obj(objs) or F.dst.tgt(m) != G.apply_obj(objs):
            fails.append(ValidationFailure("nat-typing", f"at {objs}"))
    if fails:
        return ValidationReport(tuple(fails))
    for ms in F.mor_map:
        srcs = tuple(s.src(m) for s, m in zip(F.slots, ms))
        tgts = tuple(s.tgt(m) for s, m in zip(F.slots, ms))
        left = F.dst.compose(t.at(tgts), F.apply_mor(ms))
        right = F.dst.compose(G.apply_mor(ms), t.at(srcs))
        if left != right:
            fails.append(ValidationFailure("naturality", f"at morphism tuple {ms}"))
    return ValidationReport(tuple(fails))
