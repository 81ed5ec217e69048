"""Abstract syntax for the keyword-operator game-logic language.

Formulas are immutable trees.  Negation is kept in a canonical form: on
atoms it lives in the ``negated`` flag, on compound formulas it is a
``Unary("not", ...)`` node that :func:`normalize` eliminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace as _dc_replace
from typing import Iterator, Optional, Union

# ---------------------------------------------------------------------------
# Operator vocabulary (the strings double as concrete-syntax keywords)

NOT = "not"

CONJUNCTIONS = ("pand", "cand", "sand", "tand")
DISJUNCTIONS = ("por", "cor", "sor", "tor")
IMPLICATIONS = ("pimp", "cimp", "simp", "timp")
RIMPLICATIONS = ("brimp", "primp", "srimp", "trimp")
RECURRENCES = ("brec", "prec", "srec", "trec")
CORECURRENCES = ("cobrec", "coprec", "cosrec", "cotrec")
REPUDIATIONS = ("brep", "prep", "srep", "trep")
UNIVERSALS = ("blall", "call", "pall", "sall", "tall")
EXISTENTIALS = ("blex", "cex", "pex", "sex", "tex")

BINARY_OPS = CONJUNCTIONS + DISJUNCTIONS + IMPLICATIONS + RIMPLICATIONS
UNARY_OPS = (NOT,) + RECURRENCES + CORECURRENCES + REPUDIATIONS
QUANT_OPS = UNIVERSALS + EXISTENTIALS

# Dual pairs, used by normalize and by the game-level De Morgan laws.
DUAL = {}
for _a, _b in (
    list(zip(CONJUNCTIONS, DISJUNCTIONS))
    + list(zip(RECURRENCES, CORECURRENCES))
    + list(zip(UNIVERSALS, EXISTENTIALS))
):
    DUAL[_a] = _b
    DUAL[_b] = _a

# F op G  ==  (prefix applied to not F) <disj> G ; prefix None means plain.
IMPLICATION_EXPANSION = {
    "pimp": (None, "por"),
    "cimp": (None, "cor"),
    "simp": (None, "sor"),
    "timp": (None, "tor"),
    "brimp": ("cobrec", "por"),
    "primp": ("coprec", "por"),
    "srimp": ("cosrec", "por"),
    "trimp": ("cotrec", "por"),
}

# repudiation op -> corecurrence applied to the negated child
REPUDIATION_EXPANSION = {
    "brep": "cobrec",
    "prep": "coprec",
    "srep": "cosrec",
    "trep": "cotrec",
}

KEYWORDS = frozenset(
    BINARY_OPS + UNARY_OPS + QUANT_OPS + ("top", "bot")
)


class SyntaxError_(Exception):
    """Raised for malformed formulas, bad paths and capture violations."""


# ---------------------------------------------------------------------------
# Letters and terms

ELEMENTARY = "elementary"
GENERAL = "general"
LOGICAL_TOP = "top"
LOGICAL_BOT = "bot"
EQUALITY = "equality"


@dataclass(frozen=True)
class Letter:
    name: str
    arity: int
    kind: str

    def __post_init__(self):
        if self.kind in (LOGICAL_TOP, LOGICAL_BOT) and self.arity != 0:
            raise SyntaxError_(f"logical letter {self.name} must be nullary")
        if self.kind == EQUALITY and self.arity != 2:
            raise SyntaxError_("equality letter must be binary")


TOP_LETTER = Letter("top", 0, LOGICAL_TOP)
BOT_LETTER = Letter("bot", 0, LOGICAL_BOT)
EQ_LETTER = Letter("=", 2, EQUALITY)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    numeral: str

    def __post_init__(self):
        if not self.numeral.isdigit():
            raise SyntaxError_(f"bad constant {self.numeral!r}")
        if len(self.numeral) > 1 and self.numeral[0] == "0":
            raise SyntaxError_(f"leading zero in constant {self.numeral!r}")

    def __str__(self):
        return self.numeral


@dataclass(frozen=True)
class App:
    letter: str
    args: tuple  # of Term

    def __str__(self):
        return f"{self.letter}({', '.join(map(str, self.args))})"


Term = Union[Var, Const, App]


def term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


# ---------------------------------------------------------------------------
# Formula nodes


@dataclass(frozen=True)
class Atom:
    letter: Letter
    args: tuple = ()
    negated: bool = False

    def __post_init__(self):
        if len(self.args) != self.letter.arity:
            raise SyntaxError_(
                f"letter {self.letter.name} has arity {self.letter.arity}, "
                f"got {len(self.args)} arguments"
            )


@dataclass(frozen=True)
class Unary:
    op: str
    child: "Formula"

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise SyntaxError_(f"bad unary operator {self.op!r}")


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Formula"
    right: "Formula"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise SyntaxError_(f"bad binary operator {self.op!r}")


@dataclass(frozen=True)
class Quant:
    op: str
    var: str
    child: "Formula"

    def __post_init__(self):
        if self.op not in QUANT_OPS:
            raise SyntaxError_(f"bad quantifier {self.op!r}")


Formula = Union[Atom, Unary, Binary, Quant]

TOP = Atom(TOP_LETTER)
BOT = Atom(BOT_LETTER)


def neg(f: Formula) -> Formula:
    """Negation in canonical form: flips atom flags, cancels double nots."""
    if isinstance(f, Atom):
        if f.letter.kind == LOGICAL_TOP:
            return BOT
        if f.letter.kind == LOGICAL_BOT:
            return TOP
        return _dc_replace(f, negated=not f.negated)
    if isinstance(f, Unary) and f.op == NOT:
        return f.child
    return Unary(NOT, f)


# ---------------------------------------------------------------------------
# Structural helpers


def children(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, (Unary, Quant)):
        return (f.child,)
    return (f.left, f.right)


def with_children(f: Formula, kids: tuple) -> Formula:
    if isinstance(f, Atom):
        if kids:
            raise SyntaxError_("atom takes no children")
        return f
    if isinstance(f, Unary):
        return Unary(f.op, kids[0])
    if isinstance(f, Quant):
        return Quant(f.op, f.var, kids[0])
    return Binary(f.op, kids[0], kids[1])


def locate(f: Formula, path) -> Formula:
    """Return the subformula addressed by a sequence of child indices."""
    node = f
    for i in path:
        kids = children(node)
        if not 0 <= i < len(kids):
            raise SyntaxError_(f"invalid path {list(path)} in formula")
        node = kids[i]
    return node


def replace(f: Formula, path, h: Formula) -> Formula:
    """Return ``f`` with the subformula at ``path`` replaced by ``h``."""
    if not path:
        return h
    i, rest = path[0], path[1:]
    kids = children(f)
    if not 0 <= i < len(kids):
        raise SyntaxError_(f"invalid path {list(path)} in formula")
    new_kids = list(kids)
    new_kids[i] = replace(kids[i], rest, h)
    return with_children(f, tuple(new_kids))


def subformulas(f: Formula, path=()) -> Iterator[tuple]:
    """Yield (path, node) for every node of ``f`` in preorder."""
    yield path, f
    for i, c in enumerate(children(f)):
        yield from subformulas(c, path + (i,))


def atoms(f: Formula) -> Iterator[Atom]:
    for _, node in subformulas(f):
        if isinstance(node, Atom):
            yield node


def letters(f: Formula) -> dict:
    """All extralogical game letters of ``f``, keyed by name."""
    out = {}
    for a in atoms(f):
        if a.letter.kind in (ELEMENTARY, GENERAL):
            out[a.letter.name] = a.letter
    return out


def free_vars(f: Formula) -> set:
    if isinstance(f, Atom):
        out = set()
        for t in f.args:
            out |= term_vars(t)
        return out
    if isinstance(f, Quant):
        return free_vars(f.child) - {f.var}
    out = set()
    for c in children(f):
        out |= free_vars(c)
    return out


class CaptureError(SyntaxError_):
    """Substitution would capture a free variable of the inserted term."""


def _subst_term(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, App):
        return App(t.letter, tuple(_subst_term(a, x, s) for a in t.args))
    return t


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Replace all free occurrences of variable ``x`` in ``f`` by term ``t``."""
    tvars = term_vars(t)

    def go(node: Formula) -> Formula:
        if isinstance(node, Atom):
            return _dc_replace(node, args=tuple(_subst_term(a, x, t) for a in node.args))
        if isinstance(node, Quant):
            if node.var == x:
                return node
            if node.var in tvars and x in free_vars(node.child):
                raise CaptureError(
                    f"substituting {t} for {x} would be captured by "
                    f"{node.op} {node.var}"
                )
            return Quant(node.op, node.var, go(node.child))
        return with_children(node, tuple(go(c) for c in children(node)))

    return go(f)


# ---------------------------------------------------------------------------
# Normalization: push negations to atoms, expand (r)implications/repudiations


def normalize(f: Formula) -> Formula:
    """DeMorgan normal form.

    Negation survives only as atom flags; every implication, rimplication
    and repudiation is expanded into its definition.
    """
    return _norm(f, False)


def _norm(f: Formula, negate: bool) -> Formula:
    if isinstance(f, Atom):
        return neg(f) if negate else f
    if isinstance(f, Unary):
        if f.op == NOT:
            return _norm(f.child, not negate)
        if f.op in REPUDIATION_EXPANSION:
            # brep F = cobrec not F  (and friends)
            op = REPUDIATION_EXPANSION[f.op]
            return _norm(Unary(op, Unary(NOT, f.child)), negate)
        op = DUAL[f.op] if negate else f.op
        return Unary(op, _norm(f.child, negate))
    if isinstance(f, Quant):
        op = DUAL[f.op] if negate else f.op
        return Quant(op, f.var, _norm(f.child, negate))
    # binary
    if f.op in IMPLICATION_EXPANSION:
        prefix, disj = IMPLICATION_EXPANSION[f.op]
        left = Unary(NOT, f.left)
        if prefix is not None:
            left = Unary(prefix, left)
        return _norm(Binary(disj, left, f.right), negate)
    op = DUAL[f.op] if negate else f.op
    return Binary(op, _norm(f.left, negate), _norm(f.right, negate))


def is_normalized(f: Formula) -> bool:
    for _, node in subformulas(f):
        if isinstance(node, Unary) and node.op == NOT:
            return False
        if isinstance(node, Unary) and node.op in REPUDIATIONS:
            return False
        if isinstance(node, Binary) and node.op in IMPLICATIONS + RIMPLICATIONS:
            return False
    return True


# ---------------------------------------------------------------------------
# Printing (canonical concrete syntax; parse(fmt(f)) == f)

_LEVEL_IMPL = 0
_LEVEL_BIN = 1
_LEVEL_UNARY = 2

_IMPL_OPS = frozenset(IMPLICATIONS + RIMPLICATIONS)


def _fmt_term(t: Term) -> str:
    return str(t)


def _fmt(f: Formula, level: int) -> str:
    if isinstance(f, Atom):
        if f.letter.kind == EQUALITY:
            body = f"{_fmt_term(f.args[0])} = {_fmt_term(f.args[1])}"
            return f"not ({body})" if f.negated else body
        if f.args:
            body = f"{f.letter.name}({', '.join(_fmt_term(a) for a in f.args)})"
        else:
            body = f.letter.name
        return f"not {body}" if f.negated else body
    if isinstance(f, Unary):
        return f"{f.op} {_fmt(f.child, _LEVEL_UNARY)}"
    if isinstance(f, Quant):
        return f"{f.op} {f.var} . {_fmt(f.child, _LEVEL_UNARY)}"
    # binary
    my_level = _LEVEL_IMPL if f.op in _IMPL_OPS else _LEVEL_BIN
    if my_level == _LEVEL_BIN:
        # flatten left-nested chains of the same operator
        lhs = (
            _fmt(f.left, _LEVEL_BIN)
            if isinstance(f.left, Binary) and f.left.op == f.op
            else _fmt(f.left, _LEVEL_UNARY)
        )
        rhs = _fmt(f.right, _LEVEL_UNARY)
        text = f"{lhs} {f.op} {rhs}"
    else:
        text = f"{_fmt(f.left, _LEVEL_BIN)} {f.op} {_fmt(f.right, _LEVEL_BIN)}"
    if my_level < level:
        return f"({text})"
    return text


def _fmt_operand(f: Formula, level: int) -> str:
    return _fmt(f, level)


def fmt(f: Formula) -> str:
    """Canonical text of a formula; round-trips through ``parse``."""
    return _fmt(f, _LEVEL_IMPL)


# ---------------------------------------------------------------------------
# System fragments

CL13_OPS = frozenset(("pand", "por", "cand", "cor", "sand", "sor", "tand", "tor"))
CL12_BIN_OPS = frozenset(("pand", "por", "cand", "cor"))
CL12_QUANT_OPS = frozenset(("call", "cex", "blall", "blex"))
CL15_OPS = frozenset(("pand", "por"))
CL15_UNARY = frozenset(("brec", "cobrec"))


def fragment_violation(f: Formula, system: str) -> Optional[str]:
    """First reason why ``f`` is outside the given fragment, else None.

    Formulas are expected in normalized form (negation on atoms only).
    """
    system = system.lower()
    if system not in ("cl13", "cl12", "cl15"):
        raise ValueError(f"unknown system {system!r}")
    for path, node in subformulas(f):
        where = f"at path {list(path)}"
        if isinstance(node, Unary):
            if node.op == NOT:
                return f"negation on a compound formula {where} (not normalized)"
            if system != "cl15" or node.op not in CL15_UNARY:
                return f"operator {node.op} not allowed in {system} {where}"
        elif isinstance(node, Binary):
            ok = {"cl13": CL13_OPS, "cl12": CL12_BIN_OPS, "cl15": CL15_OPS}[system]
            if node.op not in ok:
                return f"operator {node.op} not allowed in {system} {where}"
        elif isinstance(node, Quant):
            if system != "cl12" or node.op not in CL12_QUANT_OPS:
                return f"quantifier {node.op} not allowed in {system} {where}"
        else:  # Atom
            kind = node.letter.kind
            if system == "cl15":
                if kind != GENERAL or node.letter.arity != 0:
                    return (
                        f"{system} atoms must be nullary general letters; "
                        f"found {node.letter.name} {where}"
                    )
            elif system == "cl13":
                if kind == EQUALITY:
                    return f"equality not allowed in cl13 {where}"
                if kind in (ELEMENTARY, GENERAL) and node.letter.arity != 0:
                    return (
                        f"cl13 letters must be nullary; found "
                        f"{node.letter.name}/{node.letter.arity} {where}"
                    )
                for a in node.args:
                    if isinstance(a, App):
                        return f"function letters not allowed in cl13 {where}"
            else:  # cl12
                if kind == GENERAL:
                    return f"general letter {node.letter.name} not allowed in cl12 {where}"
    return None


def fragment_check(f: Formula, system: str) -> bool:
    """True iff ``f`` lies in the CL13/CL12/CL15 fragment."""
    return fragment_violation(f, system) is None
