"""Classical oracles: propositional tautology and first-order validity.

The validity prover is refutational: negate, skolemize, clausify, add
explicit equality axioms (reflexivity, symmetry, transitivity and
congruence schemes for the symbols that occur), then saturate with
binary resolution and factoring under iterative deepening.  PROVED is
definitive; UNKNOWN carries a reason ("budget" or "refuted", the latter
when the clause set saturated without a contradiction).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import syntax as sx


class NotElementary(Exception):
    pass


@dataclass(frozen=True)
class Verdict:
    proved: bool
    reason: Optional[str] = None  # "budget" | "refuted" | None
    hint: Optional[str] = None  # countermodel hint when refuted
    clauses_used: int = 0

    def __bool__(self):
        return self.proved


PROPOSITIONAL_ATOM_CAP = 22


def _check_elementary(f):
    for _, node in sx.subformulas(f):
        if isinstance(node, sx.Unary) and node.op != sx.NOT:
            raise NotElementary(f"operator {node.op} is not classical")
        if isinstance(node, sx.Binary) and node.op not in (
            "pand",
            "por",
        ) + sx.IMPLICATIONS[:1]:
            # allow pimp since elementarizations are stated with implication
            if node.op != "pimp":
                raise NotElementary(f"operator {node.op} is not classical")
        if isinstance(node, sx.Quant) and node.op not in ("blall", "blex"):
            raise NotElementary(f"quantifier {node.op} is not classical")


def is_propositional(f) -> bool:
    for _, node in sx.subformulas(f):
        if isinstance(node, sx.Quant):
            return False
        if isinstance(node, sx.Atom) and (
            node.letter.kind == sx.EQUALITY or node.args
        ):
            return False
    return True


def tautology(f) -> tuple:
    """Complete truth-table check; returns (is_tautology, falsifying map)."""
    _check_elementary(f)
    g = sx.normalize(f)
    names = sorted({a.letter.name for a in sx.atoms(g) if a.letter.kind == sx.ELEMENTARY})
    if len(names) > PROPOSITIONAL_ATOM_CAP:
        raise NotElementary(f"too many atoms for a truth table ({len(names)})")

    def ev(node, env):
        if isinstance(node, sx.Atom):
            if node.letter.kind == sx.LOGICAL_TOP:
                return True
            if node.letter.kind == sx.LOGICAL_BOT:
                return False
            v = env[node.letter.name]
            return (not v) if node.negated else v
        if isinstance(node, sx.Binary):
            if node.op == "pand":
                return ev(node.left, env) and ev(node.right, env)
            return ev(node.left, env) or ev(node.right, env)
        raise NotElementary("not propositional")

    for bits in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, bits))
        if not ev(g, env):
            return False, env
    return True, None


# ---------------------------------------------------------------------------
# First-order machinery.  Internal terms: ("v", name) or ("f", name, args).
# Literals: (sign, predicate, args); predicate "=" for equality.


def _conv_term(t, quantified):
    if isinstance(t, sx.Var):
        if t.name in quantified:
            return ("v", t.name)
        return ("f", "$free_" + t.name, ())  # free variables act as constants
    if isinstance(t, sx.Const):
        return ("f", "$c" + t.numeral, ())
    return ("f", t.letter, tuple(_conv_term(a, quantified) for a in t.args))


def _nnf_literals(f, quantified):
    """Formula (normalized, classical) -> structural tree of lit/and/or/all/ex."""
    if isinstance(f, sx.Atom):
        if f.letter.kind == sx.LOGICAL_TOP:
            return ("true",) if not f.negated else ("false",)
        if f.letter.kind == sx.LOGICAL_BOT:
            return ("false",) if not f.negated else ("true",)
        pred = "=" if f.letter.kind == sx.EQUALITY else f.letter.name
        args = tuple(_conv_term(t, quantified) for t in f.args)
        return ("lit", not f.negated, pred, args)
    if isinstance(f, sx.Binary):
        return (
            "and" if f.op == "pand" else "or",
            _nnf_literals(f.left, quantified),
            _nnf_literals(f.right, quantified),
        )
    if isinstance(f, sx.Quant):
        kind = "all" if f.op == "blall" else "ex"
        return (kind, f.var, _nnf_literals(f.child, quantified | {f.var}))
    raise NotElementary(f"unexpected node {f}")


_fresh_counter = itertools.count(1)


def _skolemize(tree, universals, subst, out_clausetrees):
    kind = tree[0]
    if kind in ("true", "false"):
        return tree
    if kind == "lit":
        _, sign, pred, args = tree
        return ("lit", sign, pred, tuple(_apply(subst, a) for a in args))
    if kind in ("and", "or"):
        return (kind, _skolemize(tree[1], universals, subst, out_clausetrees),
                _skolemize(tree[2], universals, subst, out_clausetrees))
    if kind == "all":
        v = f"{tree[1]}#{next(_fresh_counter)}"
        s2 = dict(subst)
        s2[tree[1]] = ("v", v)
        return _skolemize(tree[2], universals + [("v", v)], s2, out_clausetrees)
    # existential: skolem function of the universals in scope
    fname = f"$sk{next(_fresh_counter)}"
    s2 = dict(subst)
    s2[tree[1]] = ("f", fname, tuple(universals))
    return _skolemize(tree[2], universals, s2, out_clausetrees)


def _apply(subst, term):
    if term[0] == "v":
        got = subst.get(term[1])
        if got is None:
            return term
        return got
    return ("f", term[1], tuple(_apply(subst, a) for a in term[2]))


def _cnf(tree):
    kind = tree[0]
    if kind == "true":
        return []
    if kind == "false":
        return [frozenset()]
    if kind == "lit":
        return [frozenset({(tree[1], tree[2], tree[3])})]
    if kind == "and":
        return _cnf(tree[1]) + _cnf(tree[2])
    left, right = _cnf(tree[1]), _cnf(tree[2])
    return [a | b for a in left for b in right]


def _term_symbols(term, funcs):
    if term[0] == "f":
        funcs.setdefault(term[1], len(term[2]))
        for a in term[2]:
            _term_symbols(a, funcs)


def _equality_axioms(clauses):
    funcs: dict = {}
    preds: dict = {}
    uses_eq = False
    for cl in clauses:
        for sign, pred, args in cl:
            if pred == "=":
                uses_eq = True
            else:
                preds.setdefault(pred, len(args))
            for a in args:
                _term_symbols(a, funcs)
    if not uses_eq:
        return []
    def v(i):
        return ("v", f"$x{i}")
    def w(i):
        return ("v", f"$y{i}")
    axioms = [
        frozenset({(True, "=", (v(0), v(0)))}),
        frozenset({(False, "=", (v(0), v(1))), (True, "=", (v(1), v(0)))}),
        frozenset(
            {
                (False, "=", (v(0), v(1))),
                (False, "=", (v(1), v(2))),
                (True, "=", (v(0), v(2))),
            }
        ),
    ]
    for name, arity in sorted(funcs.items()):
        if arity == 0:
            continue
        xs, ys = [v(i) for i in range(arity)], [w(i) for i in range(arity)]
        lits = {(False, "=", (x, y)) for x, y in zip(xs, ys)}
        lits.add((True, "=", (("f", name, tuple(xs)), ("f", name, tuple(ys)))))
        axioms.append(frozenset(lits))
    for name, arity in sorted(preds.items()):
        if arity == 0:
            continue
        xs, ys = [v(i) for i in range(arity)], [w(i) for i in range(arity)]
        lits = {(False, "=", (x, y)) for x, y in zip(xs, ys)}
        lits.add((False, name, tuple(xs)))
        lits.add((True, name, tuple(ys)))
        axioms.append(frozenset(lits))
    return axioms


# -- unification -------------------------------------------------------------


def _walk(t, s):
    while t[0] == "v" and t[1] in s:
        t = s[t[1]]
    return t


def _occurs(v, t, s):
    t = _walk(t, s)
    if t[0] == "v":
        return t[1] == v
    return any(_occurs(v, a, s) for a in t[2])


def _unify(t1, t2, s):
    t1, t2 = _walk(t1, s), _walk(t2, s)
    if t1 == t2:
        return s
    if t1[0] == "v":
        if _occurs(t1[1], t2, s):
            return None
        s2 = dict(s)
        s2[t1[1]] = t2
        return s2
    if t2[0] == "v":
        return _unify(t2, t1, s)
    if t1[1] != t2[1] or len(t1[2]) != len(t2[2]):
        return None
    for a, b in zip(t1[2], t2[2]):
        s = _unify(a, b, s)
        if s is None:
            return None
    return s


def _subst_term_full(t, s):
    t = _walk(t, s)
    if t[0] == "v":
        return t
    return ("f", t[1], tuple(_subst_term_full(a, s) for a in t[2]))


def _subst_clause(cl, s):
    return frozenset(
        (sign, pred, tuple(_subst_term_full(a, s) for a in args))
        for sign, pred, args in cl
    )


_rename_counter = itertools.count(1)


def _rename(cl):
    mapping: dict = {}

    def rn(t):
        if t[0] == "v":
            if t[1] not in mapping:
                mapping[t[1]] = ("v", f"$r{next(_rename_counter)}_{len(mapping)}")
            return mapping[t[1]]
        return ("f", t[1], tuple(rn(a) for a in t[2]))

    return frozenset((sign, pred, tuple(rn(a) for a in args)) for sign, pred, args in cl)


def _canonical(cl):
    """Clause key modulo variable renaming, for duplicate elimination."""
    mapping: dict = {}

    def cn(t):
        if t[0] == "v":
            if t[1] not in mapping:
                mapping[t[1]] = f"V{len(mapping)}"
            return ("v", mapping[t[1]])
        return ("f", t[1], tuple(cn(a) for a in t[2]))

    lits = sorted(
        (sign, pred, tuple(cn(a) for a in args)) for sign, pred, args in sorted(cl)
    )
    return tuple(lits)


def _weight(cl):
    def tw(t):
        if t[0] == "v":
            return 1
        return 1 + sum(tw(a) for a in t[2])

    return sum(1 + sum(tw(a) for a in args) for _, _, args in cl)


def _is_taut(cl):
    pos = {(pred, args) for sign, pred, args in cl if sign}
    return any((pred, args) in pos for sign, pred, args in cl if not sign)


def _resolvents(c1, c2):
    c2 = _rename(c2)
    for sign1, pred1, args1 in c1:
        for sign2, pred2, args2 in c2:
            if pred1 != pred2 or sign1 == sign2 or len(args1) != len(args2):
                continue
            s: Optional[dict] = {}
            for a, b in zip(args1, args2):
                s = _unify(a, b, s)
                if s is None:
                    break
            if s is None:
                continue
            rest = (c1 - {(sign1, pred1, args1)}) | (c2 - {(sign2, pred2, args2)})
            yield _subst_clause(rest, s)


def _factors(cl):
    lits = sorted(cl)
    for i in range(len(lits)):
        for j in range(i + 1, len(lits)):
            s1, p1, a1 = lits[i]
            s2, p2, a2 = lits[j]
            if s1 != s2 or p1 != p2 or len(a1) != len(a2):
                continue
            s: Optional[dict] = {}
            for a, b in zip(a1, a2):
                s = _unify(a, b, s)
                if s is None:
                    break
            if s is not None:
                yield _subst_clause(cl, s)


def clausify(f) -> list:
    """Clauses of the negation of ``f`` plus equality axioms."""
    _check_elementary(f)
    g = sx.normalize(sx.Unary(sx.NOT, f))
    tree = _nnf_literals(g, frozenset())
    tree = _skolemize(tree, [], {}, None)
    clauses = [c for c in _cnf(tree) if not _is_taut(c)]
    clauses.extend(_equality_axioms(clauses))
    return clauses


def classical_valid(f, budget: int = 5000) -> Verdict:
    """Validity in classical logic with equality, functions and constants.

    PROVED only when a refutation is found; complete for validity as the
    budget grows.  For propositional input the check is decisive either
    way (a falsifying assignment is reported as a hint).
    """
    _check_elementary(f)
    if is_propositional(f):
        ok, env = tautology(f)
        if ok:
            return Verdict(True)
        hint = ", ".join(f"{k}={'1' if v else '0'}" for k, v in sorted(env.items()))
        return Verdict(False, reason="refuted", hint=f"falsified by {hint}")

    start = clausify(f)
    if any(len(c) == 0 for c in start):
        return Verdict(True)

    used = 0
    for limit in (10, 16, 24, 36, 54):
        seen = {_canonical(c) for c in start}
        processed: list = []
        queue = sorted(start, key=lambda c: (_weight(c), _canonical(c)))
        discarded = False
        while queue and used < budget:
            queue.sort(key=lambda c: (_weight(c), _canonical(c)))
            given = queue.pop(0)
            used += 1
            processed.append(given)
            new = list(_factors(given))
            for other in processed:
                new.extend(_resolvents(given, other))
            for cl in new:
                if len(cl) == 0:
                    return Verdict(True, clauses_used=used)
                if _is_taut(cl):
                    continue
                if _weight(cl) > limit:
                    discarded = True
                    continue
                key = _canonical(cl)
                if key in seen:
                    continue
                seen.add(key)
                queue.append(cl)
        if used >= budget:
            return Verdict(False, reason="budget", clauses_used=used)
        if not discarded:
            # saturated without the empty clause: genuinely not valid
            return Verdict(False, reason="refuted", clauses_used=used)
    return Verdict(False, reason="budget", clauses_used=used)
