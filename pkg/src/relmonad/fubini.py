"""Flat double extensions: both slots at once, one quotient.

`interchange` produces the swap cell by transposing through the adjunction,
one slot at a time.  This module computes the same correspondence a second
way, with no extension-of-extension anywhere: extend a map in two slots
simultaneously by quotienting the set of triples

    (element of El(p), element of El(q), value element)

under the arrows of both element categories.  Routing the iterated
extensions' classes through this flat quotient yields the canonical
bijection between them, which the checker compares against the swap cell
table for table.
"""

from .presheaf import FinSet, Presheaf, category_of_elements
from .kan import strengthen

__all__ = ["FlatExtension", "flat_double_extension", "gamma_tables"]


class FlatExtension:
    """Retained data of a two-slot extension at fixed arguments."""

    def __init__(self, presheaf, coproj, reps):
        self.presheaf = presheaf
        # (node_p, node_q) -> per-object tuple: value element -> class
        self.coproj = coproj
        # per object: class -> (node_p, node_q, value element)
        self.reps = reps


def flat_double_extension(f, j, k, args) -> FlatExtension:
    p, q = args[j], args[k]
    elp, elq = category_of_elements(p), category_of_elements(q)
    np_, nq = len(elp.el_objs), len(elq.el_objs)

    vals = {}
    for i1, (x, _) in enumerate(elp.el_objs):
        for i2, (w, _) in enumerate(elq.el_objs):
            a = list(args)
            a[j], a[k] = x, w
            vals[(i1, i2)] = f.evaluate(tuple(a))

    per_object = []
    for y in f.cod.objects:
        offsets = {}
        total = 0
        for i1 in range(np_):
            for i2 in range(nq):
                offsets[(i1, i2)] = total
                total += len(vals[(i1, i2)].at[y])

        parent = list(range(total))

        def find(i):
            root = i
            while parent[root] != root:
                root = parent[root]
            while parent[i] != root:
                parent[i], i = root, parent[i]
            return root

        def union(a_, b_):
            ra, rb = find(a_), find(b_)
            if ra != rb:
                lo, hi = (ra, rb) if ra < rb else (rb, ra)
                parent[hi] = lo

        for ai in elp.morphisms:
            if elp.is_identity(ai):
                continue
            s1, t1 = elp.src(ai), elp.tgt(ai)
            m = elp.el_arrows[ai][0]
            for i2, (w, _) in enumerate(elq.el_objs):
                a = list(args)
                a[j], a[k] = elp.el_objs[s1][0], w
                row = f.morphism_at(tuple(a), j, m).components[y]
                for t, image in enumerate(row):
                    union(offsets[(s1, i2)] + t, offsets[(t1, i2)] + image)
        for ai in elq.morphisms:
            if elq.is_identity(ai):
                continue
            s2, t2 = elq.src(ai), elq.tgt(ai)
            m = elq.el_arrows[ai][0]
            for i1, (x, _) in enumerate(elp.el_objs):
                a = list(args)
                a[j], a[k] = x, elq.el_objs[s2][0]
                row = f.morphism_at(tuple(a), k, m).components[y]
                for t, image in enumerate(row):
                    union(offsets[(i1, s2)] + t, offsets[(i1, t2)] + image)

        roots = sorted({find(i) for i in range(total)})
        class_of = {r: c for c, r in enumerate(roots)}
        coproj = {}
        for i1 in range(np_):
            for i2 in range(nq):
                n = len(vals[(i1, i2)].at[y])
                coproj[(i1, i2)] = tuple(
                    class_of[find(offsets[(i1, i2)] + t)] for t in range(n)
                )
        reps = []
        for r in roots:
            found = None
            for i1 in range(np_):
                for i2 in range(nq):
                    n = len(vals[(i1, i2)].at[y])
                    off = offsets[(i1, i2)]
                    if off <= r < off + n:
                        found = (i1, i2, r - off)
                        break
                if found:
                    break
            reps.append(found)
        per_object.append((coproj, tuple(reps), len(roots)))

    at = [FinSet(f"fl{i}" for i in range(per_object[y][2])) for y in f.cod.objects]
    act = []
    for u in f.cod.morphisms:
        a_, b_ = f.cod.src(u), f.cod.tgt(u)
        row = []
        for i1, i2, t in per_object[b_][1]:
            image = vals[(i1, i2)].act[u][t]
            row.append(per_object[a_][0][(i1, i2)][image])
        act.append(tuple(row))
    pres = Presheaf(f.cod, at, act)
    return FlatExtension(
        pres,
        {key: tuple(per_object[y][0][key] for y in f.cod.objects)
         for key in per_object[0][0]} if per_object else {},
        tuple(per_object[y][1] for y in f.cod.objects),
    )


def gamma_tables(f, j, k, args):
    """Expected interchange tables at one argument tuple, j < k.

    For each codomain object: class of the k-then-j iterated extension ->
    class of the j-then-k one, routed through the flat quotient.  Built
    entirely from retained colimit data; the swap cell never enters.
    """
    if not j < k:
        raise ValueError("gamma_tables expects j < k")
    tk = strengthen(f, k)
    ts = strengthen(tk, j)
    sj = strengthen(f, j)
    st = strengthen(sj, k)
    flat = flat_double_extension(f, j, k, args)

    d_outer_ts = ts.data(args)
    d_outer_st = st.data(args)
    elp, elq = d_outer_ts.el, d_outer_st.el

    tables = []
    for y in f.cod.objects:
        row = []
        for node1, t1 in d_outer_ts.colims[y].reps:
            x = elp.el_objs[node1][0]
            inner_args = list(args)
            inner_args[j] = x
            d_inner = tk.data(tuple(inner_args))
            node2, t = d_inner.colims[y].reps[t1]
            fl = flat.coproj[(node1, node2)][y][t]
            i1s, i2s, ts_elem = flat.reps[y][fl]
            inner_args2 = list(args)
            inner_args2[k] = elq.el_objs[i2s][0]
            d_inner2 = sj.data(tuple(inner_args2))
            c_inner = d_inner2.colims[y].coprojections[i1s][ts_elem]
            row.append(d_outer_st.colims[y].coprojections[i2s][c_inner])
        tables.append(tuple(row))
    return tables
