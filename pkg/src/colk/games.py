"""Finite games: runs, the operator zoo, staticness and winnability.

A :class:`Game` is an explicit prefix-closed tree of labeled moves in
which every node carries the winner of the corresponding position.
Operators that are infinitary on paper (recurrences, parallel
quantifiers, unbounded switching) are finitized through :class:`Bounds`.

Move encoding: bare constants for choice operators, dotted prefixes
("0.", "1.", "c.", "u.") for the parallel/sequential/toggling/branching
families, bare numerals for sequential and toggling switch moves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

T = "T"  # machine
B = "B"  # environment


def opponent(p: str) -> str:
    return B if p == T else T


class LabeledMove(NamedTuple):
    by: str
    move: str


Run = tuple  # of LabeledMove


def run_of(*pairs) -> Run:
    """Convenience: run_of(("T","0.1"), ("B","2")) -> Run."""
    return tuple(LabeledMove(by, move) for by, move in pairs)


class CapExceeded(Exception):
    """A construction or check outgrew its configured cap."""


class NotStatic(Exception):
    """Operation requires a static game."""


class UnistructuralityError(Exception):
    """Blind quantification over a frame whose structure depends on the variable."""


# ---------------------------------------------------------------------------
# Game trees


class Game:
    """Immutable game tree; children sorted for canonical form."""

    __slots__ = ("win", "children", "_map", "_hash", "node_count", "depth")

    def __init__(self, win: str, children: Iterable = ()):
        if win not in (T, B):
            raise ValueError(f"bad winner label {win!r}")
        kids = tuple(sorted(children, key=lambda kv: (kv[0].by, kv[0].move)))
        moves_seen = set()
        for lm, sub in kids:
            if not isinstance(lm, LabeledMove) or not isinstance(sub, Game):
                raise TypeError("children must map LabeledMove -> Game")
            if not lm.move:
                raise ValueError("moves are nonempty strings")
            if lm in moves_seen:
                raise ValueError(f"duplicate move {lm}")
            moves_seen.add(lm)
        object.__setattr__(self, "win", win)
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "_map", {lm: sub for lm, sub in kids})
        object.__setattr__(self, "node_count", 1 + sum(s.node_count for _, s in kids))
        object.__setattr__(self, "depth", 1 + max((s.depth for _, s in kids), default=-1))
        object.__setattr__(
            self, "_hash", hash((win, tuple((lm, s._hash) for lm, s in kids)))
        )

    def __setattr__(self, *a):
        raise AttributeError("Game is immutable")

    def child(self, lm: LabeledMove) -> Optional["Game"]:
        return self._map.get(lm)

    def moves(self) -> tuple:
        return tuple(lm for lm, _ in self.children)

    def moves_by(self, player: str) -> tuple:
        return tuple(lm for lm, _ in self.children if lm.by == player)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Game):
            return NotImplemented
        if self._hash != other._hash or self.win != other.win:
            return False
        return self.children == other.children

    def __repr__(self):
        return f"Game({self.win}, {self.node_count} nodes, depth {self.depth})"

    def positions(self, prefix: Run = ()) -> Iterable[tuple]:
        """Yield (run, node) for every position of the game."""
        yield prefix, self
        for lm, sub in self.children:
            yield from sub.positions(prefix + (lm,))


def make_elementary(winner: str) -> Game:
    """The moveless game won by ``winner``."""
    return Game(winner)


ELEM_T = make_elementary(T)
ELEM_B = make_elementary(B)


@dataclass(frozen=True)
class Bounds:
    """Finitization caps for the infinitary operators."""

    run_len: int = 8
    copies: int = 2
    bit_depth: int = 2
    switches: int = 3

    def __post_init__(self):
        if min(self.run_len, self.copies, self.bit_depth, self.switches) < 0:
            raise ValueError("bounds must be nonnegative")


DEFAULT_NODE_CAP = 500_000


# ---------------------------------------------------------------------------
# Prefixation, negation, projections


def prefixation(g: Game, psi: Run) -> Game:
    """The subtree of ``g`` rooted at position ``psi``."""
    node = g
    for lm in psi:
        node = node.child(lm)
        if node is None:
            raise ValueError(f"{psi} is not a legal position")
    return node


def negate(g: Game) -> Game:
    """Interchange the players: flip move labels and winner labels."""
    return Game(
        opponent(g.win),
        tuple((LabeledMove(opponent(lm.by), lm.move), negate(sub)) for lm, sub in g.children),
    )


def flip_run(run: Run) -> Run:
    return tuple(LabeledMove(opponent(lm.by), lm.move) for lm in run)


def project_prefix(run: Run, alpha: str) -> Run:
    """Keep moves of the form alpha+beta, stripping the prefix alpha."""
    return tuple(
        LabeledMove(lm.by, lm.move[len(alpha):])
        for lm in run
        if lm.move.startswith(alpha) and len(lm.move) > len(alpha)
    )


def _thread_split(move: str):
    head, dot, tail = move.partition(".")
    if not dot or not tail:
        return None
    if head and not set(head) <= {"0", "1"}:
        return None
    return head, tail


def project_thread(run: Run, w: str) -> Run:
    """Keep moves u.beta where u is an initial segment of bitstring w."""
    out = []
    for lm in run:
        split = _thread_split(lm.move)
        if split is None:
            continue
        u, beta = split
        if w.startswith(u):
            out.append(LabeledMove(lm.by, beta))
    return tuple(out)


def project(run: Run, mode: tuple) -> Run:
    """Dispatch: mode is ("prefix", alpha) or ("thread", w)."""
    kind, arg = mode
    if kind == "prefix":
        return project_prefix(run, arg)
    if kind == "thread":
        return project_thread(run, arg)
    raise ValueError(f"unknown projection mode {kind!r}")


# ---------------------------------------------------------------------------
# Composite game construction.  Each composite is described by a frozen
# "state" object exposing winner() and moves(); _materialize unfolds it
# into an explicit tree, sharing repeated states.


class _Builder:
    def __init__(self, cap: int):
        self.cap = cap
        self.memo: dict = {}
        self.count = 0

    def build(self, state, depth: int) -> Game:
        key = (state, depth)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        kids = ()
        if depth > 0:
            kids = tuple(
                (lm, self.build(sub, depth - 1)) for lm, sub in state.moves()
            )
        self.count += 1
        if self.count > self.cap:
            raise CapExceeded(f"game construction exceeded {self.cap} nodes")
        g = Game(state.winner(), kids)
        self.memo[key] = g
        return g


def _materialize(state, bounds: Bounds, cap: int = DEFAULT_NODE_CAP) -> Game:
    return _Builder(cap).build(state, bounds.run_len)


def _all_T(wins):
    return T if all(w == T for w in wins) else B


def _any_T(wins):
    return T if any(w == T for w in wins) else B


@dataclass(frozen=True)
class _Parallel:
    prefixes: tuple  # dotted prefix per component
    nodes: tuple  # current Game node per component
    fold: Callable

    def winner(self):
        return self.fold(n.win for n in self.nodes)

    def moves(self):
        for i, node in enumerate(self.nodes):
            for lm, sub in node.children:
                nodes = self.nodes[:i] + (sub,) + self.nodes[i + 1 :]
                yield (
                    LabeledMove(lm.by, self.prefixes[i] + lm.move),
                    _Parallel(self.prefixes, nodes, self.fold),
                )


@dataclass(frozen=True)
class _Sequential:
    labels: tuple  # component labels ("0","1") or constants, by switch number
    nodes: tuple
    owner: str  # who makes switch moves
    switched: int  # switches made so far
    max_switches: int

    def winner(self):
        return self.nodes[self.switched].win

    def moves(self):
        for i, node in enumerate(self.nodes):
            for lm, sub in node.children:
                nodes = self.nodes[:i] + (sub,) + self.nodes[i + 1 :]
                yield (
                    LabeledMove(lm.by, self.labels[i] + "." + lm.move),
                    _Sequential(self.labels, nodes, self.owner, self.switched, self.max_switches),
                )
        nxt = self.switched + 1
        if nxt < len(self.nodes) and nxt <= self.max_switches:
            yield (
                LabeledMove(self.owner, str(nxt)),
                _Sequential(self.labels, self.nodes, self.owner, nxt, self.max_switches),
            )


@dataclass(frozen=True)
class _Toggling:
    labels: tuple  # switch/prefix label per component
    nodes: tuple
    owner: str
    current: int  # component whose winner counts (starts at the "0" component)
    used: int
    max_switches: int

    def winner(self):
        return self.nodes[self.current].win

    def moves(self):
        for i, node in enumerate(self.nodes):
            for lm, sub in node.children:
                nodes = self.nodes[:i] + (sub,) + self.nodes[i + 1 :]
                yield (
                    LabeledMove(lm.by, self.labels[i] + "." + lm.move),
                    _Toggling(self.labels, nodes, self.owner, self.current, self.used, self.max_switches),
                )
        if self.used < self.max_switches:
            for i in range(len(self.nodes)):
                yield (
                    LabeledMove(self.owner, self.labels[i]),
                    _Toggling(self.labels, self.nodes, self.owner, i, self.used + 1, self.max_switches),
                )


@dataclass(frozen=True)
class _Blind:
    nodes: tuple  # one per domain individual; identical structure
    fold: Callable

    def winner(self):
        return self.fold(n.win for n in self.nodes)

    def moves(self):
        for lm, _ in self.nodes[0].children:
            yield (lm, _Blind(tuple(n.child(lm) for n in self.nodes), self.fold))


@dataclass(frozen=True)
class _Branching:
    threads: tuple  # bitstrings of length bit_depth
    nodes: tuple  # current node per thread
    fold: Callable
    bit_depth: int

    def winner(self):
        return self.fold(n.win for n in self.nodes)

    def moves(self):
        groups = [""]
        for k in range(1, self.bit_depth + 1):
            groups += ["".join(bits) for bits in _bitstrings(k)]
        for u in groups:
            ids = [i for i, w in enumerate(self.threads) if w.startswith(u)]
            if not ids:
                continue
            shared = None
            for i in ids:
                lms = set(lm for lm, _ in self.nodes[i].children)
                shared = lms if shared is None else shared & lms
            for lm in sorted(shared, key=lambda m: (m.by, m.move)):
                nodes = list(self.nodes)
                for i in ids:
                    nodes[i] = self.nodes[i].child(lm)
                yield (
                    LabeledMove(lm.by, u + "." + lm.move),
                    _Branching(self.threads, tuple(nodes), self.fold, self.bit_depth),
                )


def _bitstrings(k: int):
    if k == 0:
        yield ()
        return
    for rest in _bitstrings(k - 1):
        yield rest + ("0",)
        yield rest + ("1",)


def _truncate(g: Game, depth: int, memo=None) -> Game:
    if memo is None:
        memo = {}
    key = (id(g), depth)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if depth <= 0 or not g.children:
        out = Game(g.win) if g.children else g
    else:
        out = Game(g.win, tuple((lm, _truncate(s, depth - 1, memo)) for lm, s in g.children))
    memo[key] = out
    return out


# -- public constructors -----------------------------------------------------

_CHOICE = {"cand": (B, _all_T), "cor": (T, _any_T)}
_PARA_BIN = {"pand": _all_T, "por": _any_T}
_SEQ_BIN = {"sand": B, "sor": T}
_TOG_BIN = {"tand": B, "tor": T}

_IMP_EXPAND = {
    "pimp": ("por", None),
    "cimp": ("cor", None),
    "simp": ("sor", None),
    "timp": ("tor", None),
    "brimp": ("por", "cobrec"),
    "primp": ("por", "coprec"),
    "srimp": ("por", "cosrec"),
    "trimp": ("por", "cotrec"),
}


def combine(op: str, g0: Game, g1: Game, b: Bounds, cap: int = DEFAULT_NODE_CAP) -> Game:
    """Binary operators on games (implications handled by expansion)."""
    if op in _IMP_EXPAND:
        disj, prefix = _IMP_EXPAND[op]
        left = negate(g0)
        if prefix is not None:
            left = recur(prefix, left, b, cap)
        return combine(disj, left, g1, b, cap)
    if op in _CHOICE:
        root_win, _ = _CHOICE[op]
        mover = B if op == "cand" else T
        if b.run_len == 0:
            return Game(root_win)
        return Game(
            root_win,
            (
                (LabeledMove(mover, "0"), _truncate(g0, b.run_len - 1)),
                (LabeledMove(mover, "1"), _truncate(g1, b.run_len - 1)),
            ),
        )
    if op in _PARA_BIN:
        state = _Parallel(("0.", "1."), (g0, g1), _PARA_BIN[op])
    elif op in _SEQ_BIN:
        state = _Sequential(("0", "1"), (g0, g1), _SEQ_BIN[op], 0, min(1, b.switches))
    elif op in _TOG_BIN:
        state = _Toggling(("0", "1"), (g0, g1), _TOG_BIN[op], 0, 0, b.switches)
    else:
        raise ValueError(f"unknown binary operator {op!r}")
    return _materialize(state, b, cap)


def _require_zero(constants: Sequence[str], op: str):
    if "0" not in constants:
        raise ValueError(f"{op} needs the constant '0' among the declared constants")


def quantify(
    op: str,
    branches,
    b: Bounds,
    cap: int = DEFAULT_NODE_CAP,
) -> Game:
    """Quantifier operators on games.

    For blind ops (blall/blex) ``branches`` is a sequence of games, one
    per domain individual, all with identical move structure.  For the
    other quantifiers it is an ordered mapping constant -> Game.
    """
    if op in ("blall", "blex"):
        games = tuple(branches)
        base = games[0]
        for g in games[1:]:
            if not same_structure(base, g):
                raise UnistructuralityError(
                    f"{op}: instance games have different move structures"
                )
        return _materialize(
            _Blind(games, _all_T if op == "blall" else _any_T), b, cap
        )
    constants = tuple(branches.keys())
    games = tuple(branches[c] for c in constants)
    if op in ("call", "cex"):
        mover = B if op == "call" else T
        root_win = T if op == "call" else B
        if b.run_len == 0:
            return Game(root_win)
        return Game(
            root_win,
            tuple(
                (LabeledMove(mover, c), _truncate(g, b.run_len - 1))
                for c, g in zip(constants, games)
            ),
        )
    if op in ("pall", "pex"):
        fold = _all_T if op == "pall" else _any_T
        state = _Parallel(tuple(c + "." for c in constants), games, fold)
    elif op in ("sall", "sex"):
        _require_zero(constants, op)
        order = _numeric_order(constants)
        state = _Sequential(
            order,
            tuple(branches[c] for c in order),
            B if op == "sall" else T,
            0,
            min(b.switches, len(order) - 1),
        )
    elif op in ("tall", "tex"):
        _require_zero(constants, op)
        order = _numeric_order(constants)
        state = _Toggling(
            order,
            tuple(branches[c] for c in order),
            B if op == "tall" else T,
            0,
            0,
            b.switches,
        )
    else:
        raise ValueError(f"unknown quantifier {op!r}")
    return _materialize(state, b, cap)


def _numeric_order(constants: Sequence[str]) -> tuple:
    return tuple(sorted(constants, key=int))


def recur(op: str, g: Game, b: Bounds, cap: int = DEFAULT_NODE_CAP) -> Game:
    """Recurrence/corecurrence/repudiation operators on a single game."""
    if op in ("brep", "prep", "srep", "trep"):
        co = {"brep": "cobrec", "prep": "coprec", "srep": "cosrec", "trep": "cotrec"}[op]
        return recur(co, negate(g), b, cap)
    copies = tuple(str(i) for i in range(max(1, b.copies)))
    if op in ("prec", "coprec"):
        fold = _all_T if op == "prec" else _any_T
        state = _Parallel(tuple(c + "." for c in copies), (g,) * len(copies), fold)
    elif op in ("srec", "cosrec"):
        state = _Sequential(
            copies,
            (g,) * len(copies),
            B if op == "srec" else T,
            0,
            min(b.switches, len(copies) - 1),
        )
    elif op in ("trec", "cotrec"):
        state = _Toggling(
            copies, (g,) * len(copies), B if op == "trec" else T, 0, 0, b.switches
        )
    elif op in ("brec", "cobrec"):
        threads = tuple("".join(bits) for bits in _bitstrings(b.bit_depth))
        state = _Branching(
            threads,
            (g,) * len(threads),
            _all_T if op == "brec" else _any_T,
            b.bit_depth,
        )
    else:
        raise ValueError(f"unknown recurrence {op!r}")
    return _materialize(state, b, cap)


def same_structure(g0: Game, g1: Game) -> bool:
    """Equal legal-move trees, ignoring winner labels."""
    if len(g0.children) != len(g1.children):
        return False
    for (lm0, s0), (lm1, s1) in zip(g0.children, g1.children):
        if lm0 != lm1 or not same_structure(s0, s1):
            return False
    return True


# ---------------------------------------------------------------------------
# Legality, winners, p-legality


def legality_and_winner(g: Game, run: Run):
    """Returns (legal, winner-if-legal, T-legal, B-legal)."""
    node = g
    for k, lm in enumerate(run):
        nxt = node.child(lm)
        if nxt is None:
            offender = lm.by
            return (False, None, offender != T, offender != B)
        node = nxt
    return (True, node.win, True, True)


def p_legal(g: Game, run: Run, player: str) -> bool:
    legal, _, t_ok, b_ok = legality_and_winner(g, run)
    return t_ok if player == T else b_ok


# ---------------------------------------------------------------------------
# Static games


def _delays(run: Run, player: str):
    """All runs obtained by delaying ``player``'s moves in ``run``.

    Opponent moves may shift left relative to the player's moves, never
    right: the j-th opponent move must still be preceded by at most as
    many player moves as in the original run.
    """
    own = [lm for lm in run if lm.by == player]
    other = [lm for lm in run if lm.by != player]
    orig_rank = []  # player moves preceding each opponent move originally
    seen_own = 0
    for lm in run:
        if lm.by == player:
            seen_own += 1
        else:
            orig_rank.append(seen_own)

    out = []

    def weave(i, j, acc):
        if i == len(own) and j == len(other):
            out.append(tuple(acc))
            return
        if i < len(own) and (j >= len(other) or orig_rank[j] > i):
            weave(i + 1, j, acc + [own[i]])
        if j < len(other):
            weave(i, j + 1, acc + [other[j]])

    weave(0, 0, [])
    return out


def _run_alphabet(g: Game):
    moves = set()
    for _, node in g.positions():
        for lm, _ in node.children:
            moves.add(lm.move)
    return sorted(moves)


def won_extended(g: Game, run: Run, player: str) -> bool:
    """Winner over arbitrary runs: in an illegal run the offender loses."""
    legal, winner, t_ok, b_ok = legality_and_winner(g, run)
    if legal:
        return winner == player
    return t_ok if player == T else b_ok


def is_static(g: Game, cap: int = 2_000_000) -> bool:
    """Exhaustive bounded check of the two delay-closure conditions:
    p-legality and the (extended) p-won property of a run survive every
    p-delay.

    Runs range over the game's own moves plus one junk move, up to length
    depth+2; every p-delay of every run is checked.  Raises CapExceeded
    when the run space outgrows ``cap``.
    """
    moves = _run_alphabet(g)
    junk = "#junk"
    while junk in moves:
        junk += "#"
    moves.append(junk)
    labeled = [LabeledMove(p, m) for p in (T, B) for m in moves]
    maxlen = g.depth + 2

    est = sum(len(labeled) ** k for k in range(maxlen + 1))
    if est > cap:
        raise CapExceeded(f"static check would enumerate ~{est} runs (cap {cap})")

    def check(run):
        legal, winner, t_ok, b_ok = legality_and_winner(g, run)
        for player, ok in ((T, t_ok), (B, b_ok)):
            won = winner == player if legal else ok
            if not (ok or won):
                continue
            for om in _delays(run, player):
                o_legal, o_win, o_t, o_b = legality_and_winner(g, om)
                o_ok = o_t if player == T else o_b
                if ok and not o_ok:
                    return False
                o_won = o_win == player if o_legal else o_ok
                if won and not o_won:
                    return False
        return True

    def runs(prefix, length):
        if not check(prefix):
            return False
        if length == maxlen:
            return True
        for lm in labeled:
            if not runs(prefix + (lm,), length + 1):
                return False
        return True

    return runs((), 0)


def _static_fast(g: Game) -> bool:
    """Polynomial staticness check via single-swap closure on node pairs.

    Cross-validated against is_static in the test suite; used where the
    exhaustive oracle would be too slow.  R(u, u') below certifies that
    every tail that is player-legal (resp. player-won in the extended
    sense) from u stays so from u'; junk moves outside the game's
    alphabet make the subset conditions on available moves necessary.
    """
    rel_memo: dict = {}

    def rel(u, up, player):
        if u is up:
            return True
        key = (id(u), id(up), player)
        hit = rel_memo.get(key)
        if hit is not None:
            return hit
        ok = not (u.win == player and up.win != player)
        if ok:
            for lm, sub in u.children:
                if lm.by != player:
                    continue
                sub2 = up.child(lm)
                if sub2 is None or not rel(sub, sub2, player):
                    ok = False
                    break
        if ok:
            for lm, sub2 in up.children:
                if lm.by == player:
                    continue
                sub = u.child(lm)
                if sub is None or not rel(sub, sub2, player):
                    ok = False
                    break
        rel_memo[key] = ok
        return ok

    seen: set = set()

    def cond(v, player):
        # swap an adjacent (player a, opponent b) pair at node v
        key = (id(v), player)
        if key in seen:
            return True
        seen.add(key)
        opp = opponent(player)
        for lma, w in v.children:
            if lma.by != player:
                continue
            opp_moves = set(m for m, _ in w.children if m.by == opp)
            opp_moves |= set(m for m, _ in v.children if m.by == opp)
            for lmb in opp_moves:
                after_pair = w.child(lmb)  # node after (a, b), may be None
                vb = v.child(lmb)
                if after_pair is None:
                    # original run dies at b: player-legal and player-won
                    # regardless of tail; if b is legal first, the swap
                    # dies at a or at a junk tail, losing both properties
                    if vb is not None:
                        return False
                else:
                    if vb is None:
                        continue  # swap dies at b: opponent offends, fine
                    ua = vb.child(lma)
                    if ua is None:
                        return False
                    if not rel(after_pair, ua, player):
                        return False
        return all(cond(s, player) for _, s in v.children)

    return cond(g, T) and cond(g, B)


# ---------------------------------------------------------------------------
# Winnability


def winnable(g: Game, check_static: bool = True, static_cap: int = 300_000) -> bool:
    """True iff the machine has a winning strategy.

    The backward recursion is justified for static games only; when
    ``check_static`` is set, games small enough for the bounded check are
    verified first (larger games proceed, caveat emptor).
    """
    if check_static:
        try:
            if not is_static(g, cap=static_cap):
                raise NotStatic("winnable() requires a static game")
        except CapExceeded:
            pass

    memo: dict = {}

    def win(node: Game) -> bool:
        hit = memo.get(id(node))
        if hit is not None:
            return hit
        result = node.win == T and all(
            win(sub) for lm, sub in node.children if lm.by == B
        )
        if not result:
            result = any(win(sub) for lm, sub in node.children if lm.by == T)
        memo[id(node)] = result
        return result

    return win(g)


# ---------------------------------------------------------------------------
# Frames: games with free variables over a finite universe


@dataclass(frozen=True)
class FiniteGameFrame:
    """Total map from valuations of ``vars`` (tuples of individuals) to games.

    ``universe`` duck-types interpret.Universe: it provides domain_size,
    constants and denotator.
    """

    universe: object
    vars: tuple
    table: Mapping

    def __post_init__(self):
        need = self.universe.domain_size ** len(self.vars)
        if len(self.table) != need:
            raise ValueError(
                f"frame table must be total: expected {need} entries, got {len(self.table)}"
            )

    def instance(self, valuation: Mapping) -> Game:
        key = tuple(valuation[v] for v in self.vars)
        return self.table[key]

    def games(self):
        return self.table.values()


def is_unistructural(frame: FiniteGameFrame, x: str) -> bool:
    """True iff the legal-move structure does not depend on ``x``."""
    if x not in frame.vars:
        return True
    i = frame.vars.index(x)
    groups: dict = {}
    for key, game in frame.table.items():
        rest = key[:i] + key[i + 1 :]
        if rest in groups:
            if not same_structure(groups[rest], game):
                return False
        else:
            groups[rest] = game
    return True


def quantify_frame(
    op: str, frame: FiniteGameFrame, x: str, b: Bounds, cap: int = DEFAULT_NODE_CAP
) -> FiniteGameFrame:
    """Bind variable ``x`` of ``frame`` with a quantifier, pointwise."""
    u = frame.universe
    if x not in frame.vars:
        # vacuous quantification: sall/tall etc. still need branch games
        sub = frame
        i = None
    else:
        i = frame.vars.index(x)
    new_vars = tuple(v for v in frame.vars if v != x)
    table = {}
    for rest in _valuations(u.domain_size, len(new_vars)):
        def game_at(a: int) -> Game:
            if i is None:
                return frame.table[rest]
            key = rest[:i] + (a,) + rest[i:]
            return frame.table[key]

        if op in ("blall", "blex"):
            branches = [game_at(a) for a in range(u.domain_size)]
        else:
            branches = {c: game_at(u.denotator[c]) for c in u.constants}
        table[rest] = quantify(op, branches, b, cap)
    return FiniteGameFrame(u, new_vars, table)


def _valuations(domain_size: int, n: int):
    if n == 0:
        yield ()
        return
    for rest in _valuations(domain_size, n - 1):
        for a in range(domain_size):
            yield rest + (a,)


# ---------------------------------------------------------------------------
# Random games (test support and the interpretation sampler)


def random_game(rng, depth: int = 2, branching: int = 2, moves=("0", "1")) -> Game:
    kids = []
    if depth > 0:
        options = [(p, m) for p in (T, B) for m in moves]
        rng.shuffle(options)
        for p, m in options[: rng.randint(0, branching)]:
            kids.append((LabeledMove(p, m), random_game(rng, depth - 1, branching, moves)))
    return Game(rng.choice((T, B)), kids)


def random_static_game(rng, depth: int = 2, branching: int = 2, tries: int = 200) -> Game:
    for _ in range(tries):
        g = random_game(rng, depth, branching)
        if is_static(g, cap=500_000):
            return g
    return make_elementary(rng.choice((T, B)))


# ---------------------------------------------------------------------------
# JSON game files


def game_to_json(g: Game) -> dict:
    return {
        "win": g.win,
        "children": [
            {"by": lm.by, "move": lm.move, "node": game_to_json(sub)}
            for lm, sub in g.children
        ],
    }


def game_from_json(data: dict) -> Game:
    return Game(
        data["win"],
        tuple(
            (LabeledMove(c["by"], c["move"]), game_from_json(c["node"]))
            for c in data.get("children", ())
        ),
    )


def run_to_json(run: Run) -> list:
    return [[lm.by, lm.move] for lm in run]


def run_from_json(data) -> Run:
    return tuple(LabeledMove(by, move) for by, move in data)


def load_game(path: str) -> Game:
    with open(path) as fh:
        return game_from_json(json.load(fh))
