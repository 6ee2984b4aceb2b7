"""Equivalence-preserving clean-up of completion formulas.

Every rewrite here is valid in intuitionistic logic:

* one-point rules ``exists Z (Z = t and F)`` to ``F[t/Z]`` and
  ``forall Z (Z = t and G -> F)`` to ``forall (G -> F)[t/Z]``, where a
  nested existential witness is first pulled out of a conjunction;
* truth and falsity folding in conjunctions, disjunctions and implications;
* removal of duplicate conjuncts and disjuncts and of vacuous quantifiers.

An implication ``F -> #false`` is never rewritten, so negations survive.
"""
from __future__ import annotations

from . import logic as L


def simplify(f: L.Formula) -> L.Formula:
    while True:
        g = _step(f)
        if g == f:
            return g
        f = g


def simplify_sentence(s):
    if isinstance(s, L.SecondOrderSentence):
        return L.SecondOrderSentence(s.quantifier, s.predicate_vars, simplify(s.matrix))
    return simplify(s)


def _dedupe(items: list[L.Formula]) -> list[L.Formula]:
    return list(dict.fromkeys(items))


def _flat(f: L.Formula, kind: type) -> list[L.Formula]:
    if isinstance(f, kind) and not (kind is L.And and L.as_iff(f) is not None):
        return _flat(f.left, kind) + _flat(f.right, kind)
    return [f]


def _step(f: L.Formula) -> L.Formula:
    if isinstance(f, L.And):
        if L.as_iff(f) is not None:
            return L.And(_step(f.left), _step(f.right))
        items = [_step(c) for c in _flat(f, L.And)]
        if L.BOTTOM in items:
            return L.BOTTOM
        items = _dedupe([c for c in items if not L.is_top(c)])
        return L.conj(items)
    if isinstance(f, L.Or):
        items = [_step(c) for c in _flat(f, L.Or)]
        if any(L.is_top(c) for c in items):
            return L.TOP
        return L.disj(_dedupe([c for c in items if c != L.BOTTOM]))
    if isinstance(f, L.Implies):
        if L.is_top(f):
            return f
        left, right = _step(f.left), _step(f.right)
        if L.is_top(left):
            return right
        if L.is_top(right) or left == L.BOTTOM:
            return L.TOP
        return L.Implies(left, right)
    if isinstance(f, L.Exists):
        body = _step(f.body)
        if f.var not in L.free_variables(body):
            return body
        return _eliminate_exists(f.var, body)
    if isinstance(f, L.ForAll):
        body = _step(f.body)
        if f.var not in L.free_variables(body):
            return body
        return _eliminate_forall(f.var, body)
    return f


def _definition(v: L.Var, f: L.Formula) -> L.FOTerm | None:
    """The t of an equation ``v = t`` or ``t = v`` usable to eliminate v."""
    if not isinstance(f, L.Compare) or f.rel != "=":
        return None
    for a, b in ((f.left, f.right), (f.right, f.left)):
        if a == v and v not in set(L.term_vars(b)) and v.sort.admits(L.term_sort(b)):
            return b
    return None


def _find(v: L.Var, items: list[L.Formula]) -> tuple[int, L.FOTerm] | None:
    for k, c in enumerate(items):
        t = _definition(v, c)
        if t is not None:
            return k, t
    return None


def _pull(v: L.Var, items: list[L.Formula]):
    """Find a conjunct ``exists W (... and v = t and ...)`` and open it.

    Returns the opened witnesses and the new conjunct list, or None.
    """
    for k, c in enumerate(items):
        if not isinstance(c, L.Exists):
            continue
        ws, inner = L.quantifier_prefix(c, L.Exists)
        inner_items = _flat(inner, L.And)
        if _find(v, inner_items) is None:
            continue
        others = items[:k] + items[k + 1:]
        taken = {v.name} | {u.name for o in others for u in L.free_variables(o)}
        taken |= L.variable_names(inner)
        renamed, mapping = [], {}
        for w in ws:
            if w.name in taken:
                nw = L.Var(L.fresh_name(w.name, taken), w.sort)
                taken.add(nw.name)
                mapping[w] = nw
                renamed.append(nw)
            else:
                taken.add(w.name)
                renamed.append(w)
        if mapping:
            inner_items = [L.substitute(x, mapping) for x in inner_items]
        return renamed, items[:k] + inner_items + items[k + 1:]
    return None


def _eliminate_exists(v: L.Var, body: L.Formula) -> L.Formula:
    items = _flat(body, L.And)
    hit = _find(v, items)
    witnesses: list[L.Var] = []
    if hit is None:
        pulled = _pull(v, items)
        if pulled is None:
            return L.Exists(v, body)
        witnesses, items = pulled
        hit = _find(v, items)
    k, t = hit
    rest = [L.substitute(c, {v: t}) for j, c in enumerate(items) if j != k]
    return L.exists(witnesses, L.conj(rest))


def _eliminate_forall(v: L.Var, body: L.Formula) -> L.Formula:
    if not isinstance(body, L.Implies) or L.is_top(body):
        return L.ForAll(v, body)
    items = _flat(body.left, L.And)
    hit = _find(v, items)
    witnesses: list[L.Var] = []
    if hit is None:
        pulled = _pull(v, items)
        if pulled is None:
            return L.ForAll(v, body)
        witnesses, items = pulled
        clash = {w.name for w in witnesses} & {u.name for u in L.free_variables(body.right)}
        if clash:
            return L.ForAll(v, body)
        hit = _find(v, items)
    k, t = hit
    rest = [L.substitute(c, {v: t}) for j, c in enumerate(items) if j != k]
    right = L.substitute(body.right, {v: t})
    return L.forall(witnesses, L.Implies(L.conj(rest), right))


# --- bound-name normalisation --------------------------------------------------

_OBJECT_NAMES = ("X", "Y", "Z", "U", "V", "W")


def normalize_names(f: L.Formula) -> L.Formula:
    """Rename bound variables by sort: integers N or N1, N2, ...; objects
    X, Y, Z, U, V, W, then X1, X2, ...  Names then also tell the sort when
    the formula is read back in the specification language.  Both halves
    of an equivalence are renamed alike so it still prints as one."""
    binders = list(_binders(f))
    counts = {L.Sort.INTEGER: 0, L.Sort.OBJECT: 0}
    for v in binders:
        counts[v.sort] += 1
    free = {v.name for v in L.free_variables(f)}
    pools = {L.Sort.INTEGER: iter(_integer_names(counts[L.Sort.INTEGER], free)),
             L.Sort.OBJECT: iter(_object_names(counts[L.Sort.OBJECT], free))}
    return _rename(f, pools)


def _binders(f: L.Formula):
    pair = L.as_iff(f)
    if pair is not None:
        yield from _binders(pair[0])
        yield from _binders(pair[1])
    elif isinstance(f, (L.ForAll, L.Exists)):
        yield f.var
        yield from _binders(f.body)
    elif isinstance(f, (L.And, L.Or, L.Implies)):
        yield from _binders(f.left)
        yield from _binders(f.right)


def _integer_names(n: int, avoid: set[str]) -> list[str]:
    if n == 1 and "N" not in avoid:
        return ["N"]
    out, k = [], 0
    while len(out) < n:
        k += 1
        if f"N{k}" not in avoid:
            out.append(f"N{k}")
    return out


def _object_names(n: int, avoid: set[str]) -> list[str]:
    out = [x for x in _OBJECT_NAMES if x not in avoid][:n]
    k = 0
    while len(out) < n:
        k += 1
        for x in _OBJECT_NAMES:
            if len(out) < n and f"{x}{k}" not in avoid:
                out.append(f"{x}{k}")
    return out


def _rename(f: L.Formula, pools) -> L.Formula:
    # Traversal order matches _binders.
    pair = L.as_iff(f)
    if pair is not None:
        return L.iff(_rename(pair[0], pools), _rename(pair[1], pools))
    if isinstance(f, (L.ForAll, L.Exists)):
        new = L.Var(next(pools[f.var.sort]), f.var.sort)
        body = L.substitute(f.body, {f.var: new}) if new != f.var else f.body
        return type(f)(new, _rename(body, pools))
    if isinstance(f, (L.And, L.Or, L.Implies)):
        left = _rename(f.left, pools)
        return type(f)(left, _rename(f.right, pools))
    return f


def check_equivalence_bounded(f, g, universe, **options) -> bool:
    """True iff f and g agree on every interpretation over the bounded universe."""
    from .oracle import equivalent_bounded

    return equivalent_bounded(f, g, universe, **options)
