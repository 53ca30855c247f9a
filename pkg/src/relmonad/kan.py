"""Pointwise extension of a map along the unit in one slot, and its cells.

strengthen(f, j) turns a fin slot into a psh slot by a colimit over the
category of elements of the argument: the value at a presheaf p is the
colimit, taken objectwise in the codomain, of f's values over El(p).  All
quotients go through colimit_finset, so representatives are canonical and
reruns are bit-identical.

The cells defined here are the generators of everything the checker verifies:

  unit_cell(f, j)        f  =>  strengthen(f, j) o_j unit          (invertible)
  counit_cell(h, j)      strengthen(h o_j unit, j)  =>  h
  theta_cell(X)          strengthen(unit, 0)  =>  identity         (invertible)
  mult_cell(f, j, g, l)  strengthen(f^ o_j g, j+l)  =>  f^ o_j g^  (invertible)
  strengthen_cell(a, j)  functorial action on cells
  transpose/untranspose  the bijection the unit/counit pair induces

mult_cell is not postulated: it is the untranspose of the whiskered unit,
which is the shape every uniqueness argument downstream leans on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SlotMismatchError
from .fincat import FinCategory
from .presheaf import (
    FinSetDiagram,
    Presheaf,
    PresheafMorphism,
    category_of_elements,
    colimit_finset,
)
from .multimap import (
    ComposeMap,
    MultiMap,
    Slot,
    TwoCell,
    identity_map,
    unit_map,
    vcomp,
    whisker_inner,
    whisker_outer,
)


@dataclass
class ExtensionData:
    """Everything one evaluation of a strengthened map retains."""

    presheaf: Presheaf
    el: object  # ElementsCategory of the plugged argument
    colims: tuple  # ColimitResult per codomain object
    inner_vals: dict  # base object of the slot -> inner Presheaf


class StrengthenMap(MultiMap):
    """The pointwise extension of f along the unit in fin slot j."""

    def __init__(self, inner: MultiMap, j: int):
        if not (0 <= j < inner.arity) or inner.slots[j].kind != "fin":
            raise SlotMismatchError(f"{inner.name}: slot {j} is not a fin slot")
        slots = list(inner.slots)
        slots[j] = Slot("psh", inner.slots[j].cat)
        super().__init__(slots, inner.cod, f"ext{j}[{inner.name}]")
        self.inner = inner
        self.j = j
        self._data_memo = {}

    def certified_slots(self):
        return frozenset({self.j}) | self.inner.certified_slots()

    def data(self, args) -> ExtensionData:
        args = tuple(args)
        key = self.arg_key(args)
        hit = self._data_memo.get(key)
        if hit is not None:
            return hit
        j = self.j
        p = args[j]
        el = category_of_elements(p)
        inner_vals = {}
        for x, _ in el.el_objs:
            if x not in inner_vals:
                inner_vals[x] = self.inner.evaluate(args[:j] + (x,) + args[j + 1 :])
        arrow_mor = {}
        for ai, (m, _) in enumerate(el.el_arrows):
            if m not in arrow_mor:
                arrow_mor[m] = self.inner.morphism_at(args, j, m)
        colims = []
        for y in self.cod.objects:
            sets = tuple(inner_vals[x].at[y] for x, _ in el.el_objs)
            maps = {
                ai: arrow_mor[m].components[y] for ai, (m, _) in enumerate(el.el_arrows)
            }
            colims.append(colimit_finset(FinSetDiagram(el, sets, maps)))
        at = [c.set for c in colims]
        act = []
        for u in self.cod.morphisms:
            a, b = self.cod.src(u), self.cod.tgt(u)
            row = []
            for node, t in colims[b].reps:
                x = el.el_objs[node][0]
                row.append(colims[a].coprojections[node][inner_vals[x].act[u][t]])
            act.append(tuple(row))
        data = ExtensionData(Presheaf(self.cod, at, act), el, tuple(colims), inner_vals)
        self._data_memo[key] = data
        return data

    def _value(self, args):
        return self.data(args).presheaf

    def _mor_at(self, args, k, m):
        j = self.j
        src_data = self.data(args)
        if k == j:
            # action on a presheaf morphism phi: relabel El nodes along phi
            phi = m
            dst_data = self.data(args[:j] + (phi.dst,) + args[j + 1 :])
            comps = []
            for y in self.cod.objects:
                row = []
                for node, t in src_data.colims[y].reps:
                    x, e = src_data.el.el_objs[node]
                    node2 = dst_data.el.el_index[(x, phi.components[x][e])]
                    row.append(dst_data.colims[y].coprojections[node2][t])
                comps.append(tuple(row))
            return PresheafMorphism(src_data.presheaf, dst_data.presheaf, comps)
        # action in another slot: apply inner's action over each El node
        slot = self.slots[k]
        tgt_k = slot.cat.tgt(m) if slot.kind == "fin" else m.dst
        dst_data = self.data(args[:k] + (tgt_k,) + args[k + 1 :])
        step = {}
        for x in src_data.inner_vals:
            step[x] = self.inner.morphism_at(args[:j] + (x,) + args[j + 1 :], k, m)
        comps = []
        for y in self.cod.objects:
            row = []
            for node, t in src_data.colims[y].reps:
                x = src_data.el.el_objs[node][0]
                row.append(
                    dst_data.colims[y].coprojections[node][step[x].components[y][t]]
                )
            comps.append(tuple(row))
        return PresheafMorphism(src_data.presheaf, dst_data.presheaf, comps)


def strengthen(f: MultiMap, j: int) -> StrengthenMap:
    """Interned per (map, slot): repeated requests reuse the same node."""
    cache = f.__dict__.setdefault("_ext_cache", {})
    if j not in cache:
        cache[j] = StrengthenMap(f, j)
    return cache[j]


# -- generating cells ---------------------------------------------------------


def unit_cell(f: MultiMap, j: int) -> TwoCell:
    """f => strengthen(f, j) o_j unit: include each value at its own element."""
    ext = strengthen(f, j)
    u = unit_map(f.slots[j].cat)
    dst = ComposeMap(ext, j, u)

    def fn(args):
        x = args[j]
        p = u.evaluate((x,))
        data = ext.data(args[:j] + (p,) + args[j + 1 :])
        node = data.el.el_index[(x, u.element_of_identity(x))]
        src_val = f.evaluate(args)
        comps = [
            tuple(data.colims[y].coprojections[node][t] for t in range(len(src_val.at[y])))
            for y in f.cod.objects
        ]
        return PresheafMorphism(src_val, data.presheaf, comps)

    return TwoCell(f, dst, fn, name=f"u~[{f.name};{j}]")


def counit_cell(h: MultiMap, j: int) -> TwoCell:
    """strengthen(h o_j unit, j) => h: evaluate along classifying morphisms."""
    if h.slots[j].kind != "psh":
        raise SlotMismatchError(f"{h.name}: slot {j} is not a psh slot")
    cat = h.slots[j].cat
    u = unit_map(cat)
    src = strengthen(ComposeMap(h, j, u), j)

    def fn(args):
        p = args[j]
        data = src.data(args)
        cache = p.__dict__.setdefault("_classify_cache", {})
        comps = []
        hv = h.evaluate(args)
        for y in h.cod.objects:
            row = []
            for node, t in data.colims[y].reps:
                x, e = data.el.el_objs[node]
                if (x, e) not in cache:
                    yx = u.evaluate((x,))
                    chi = PresheafMorphism(
                        yx,
                        p,
                        [
                            tuple(p.act[mm][e] for mm in cat.hom(w, x))
                            for w in cat.objects
                        ],
                    )
                    cache[(x, e)] = chi
                psi = h.morphism_at(args[:j] + (u.evaluate((x,)),) + args[j + 1 :], j, cache[(x, e)])
                row.append(psi.components[y][t])
            comps.append(tuple(row))
        return PresheafMorphism(data.presheaf, hv, comps)

    return TwoCell(src, h, fn, name=f"sg[{h.name};{j}]")


def theta_cell(cat: FinCategory) -> TwoCell:
    """strengthen(unit, 0) => identity: collapse hom-indexed classes by acting.

    This is the counit at the identity map, written out directly.
    """
    u = unit_map(cat)
    src = strengthen(u, 0)
    dst = identity_map(cat)

    def fn(args):
        (p,) = args
        data = src.data((p,))
        comps = []
        for y in cat.objects:
            row = []
            for node, t in data.colims[y].reps:
                x, e = data.el.el_objs[node]
                hmor = cat.hom(y, x)[t]
                row.append(p.act[hmor][e])
            comps.append(tuple(row))
        return PresheafMorphism(data.presheaf, p, comps)

    return TwoCell(src, dst, fn, name=f"th[{cat.name}]")


def strengthen_cell(cell: TwoCell, j: int) -> TwoCell:
    """Functorial action of strengthening at fin slot j on a cell."""
    src = strengthen(cell.src, j)
    dst = strengthen(cell.dst, j)

    def fn(args):
        sdata = src.data(args)
        ddata = dst.data(args)
        comps = []
        for y in src.cod.objects:
            row = []
            for node, t in sdata.colims[y].reps:
                x = sdata.el.el_objs[node][0]
                phi = cell.component(args[:j] + (x,) + args[j + 1 :])
                row.append(ddata.colims[y].coprojections[node][phi.components[y][t]])
            comps.append(tuple(row))
        return PresheafMorphism(sdata.presheaf, ddata.presheaf, comps)

    return TwoCell(src, dst, fn, name=f"ext{j}[{cell.name}]")


def transpose(cell: TwoCell) -> TwoCell:
    """Restrict a cell out of a strengthened map along the unit."""
    if not isinstance(cell.src, StrengthenMap):
        raise SlotMismatchError("transpose needs a strengthened source")
    f, j = cell.src.inner, cell.src.j
    u = unit_map(f.slots[j].cat)
    return vcomp(unit_cell(f, j), whisker_inner(cell, j, u))


def untranspose(cell: TwoCell, pos: int, target: MultiMap) -> TwoCell:
    """The unique extension of cell along the unit at slot pos.

    cell must land in something that evaluates like target o_pos unit; the
    result is counit(target) after the strengthened cell, and satisfies
    transpose(untranspose(cell)) == cell.
    """
    return vcomp(strengthen_cell(cell, pos), counit_cell(target, pos))


def mult_cell(f: MultiMap, j: int, g: MultiMap, l: int) -> TwoCell:
    """strengthen(f^ o_j g, j+l) => f^ o_j strengthen(g, l).

    Defined as the untranspose of the whiskered unit of g, never postulated.
    """
    ft = strengthen(f, j)
    beta = whisker_outer(ft, j, unit_cell(g, l))
    target = ComposeMap(ft, j, strengthen(g, l))
    out = untranspose(beta, j + l, target)
    out.name = f"m^[{f.name};{j};{g.name};{l}]"
    return out
