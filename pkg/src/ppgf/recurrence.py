"""Finite recurrence systems for families X_n = seed (+) block^n (+) tail.

Eliminating the seed and the first block copy of X_n (by the same two
transformations the engine uses, restricted to those elements and with
the second copy held as protected placeholders) rewrites f_{X_n} as a sum
of rational-function multiples of f at n-1, evaluated at monomial
substitutions of its arguments.  The surviving elements always form a
chain whose members are glued to the next copy tightly enough that none
is removable; such a chain together with its cover interface into the
block is a frontier state, and there are finitely many of them since two
chain members can never be covered by the same block element.  Closing
the set of states under elimination yields the full recurrence system,
which can then be iterated to any n.

During elimination every surviving element carries its current variable
as a monomial in the original variables, so the substitutions of both
transformations reduce to monomial bookkeeping:

  * deleting b with upper cover c and lower cover a splits a branch in
    two: the first gains 1/(1 - m_b) and multiplies m_c by m_b, the
    second gains -m_b/(1 - m_b) and multiplies m_a by m_b;
  * gluing M inside an incomparable pair replaces the members' monomials
    by their product, with the inclusion-exclusion sign.

Placeholders are never deleted or glued; only their monomials absorb
multipliers, which become the argument substitutions of the recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (Q, Polynomial, RationalFunction, mono_var, mono_mul,
                      mono_subst, mono_str, rf_sum)
from .poset import Poset, rplus, rplus_offset
from . import engine
from .families import BlockDecomposition


class StateBoundExceeded(RuntimeError):
    """A terminal frontier chain reached the size of the block."""


@dataclass(frozen=True)
class FrontierState:
    """Chain of given length (positions 1..k bottom-up) plus the cover
    interface {(position, block element)} into the next copy."""
    chain_length: int
    interface: frozenset

    def sort_key(self):
        return (self.chain_length, tuple(sorted(self.interface)))

    def __str__(self):
        pairs = ", ".join("(%d,%d)" % p for p in sorted(self.interface))
        return "chain %d, interface {%s}" % (self.chain_length, pairs)


@dataclass(frozen=True)
class Term:
    """One summand: coef * F_target[n-1] under the argument substitution
    chain_args (monomial per target chain position, bottom-up) and
    copy_mults (block element -> monomial multiplier on the next copy's
    variable; identity multipliers omitted)."""
    coef: RationalFunction
    target: FrontierState
    chain_args: tuple
    copy_mults: tuple

    def mult(self, e):
        return dict(self.copy_mults).get(e, ())


@dataclass(frozen=True)
class Transition:
    source: FrontierState
    terms: tuple


class Prefix:
    """Elimination workspace: the real elements still to be removed, one
    protected placeholder copy of the block, and per-element monomials."""

    def __init__(self, poset, reals, ph_to_block, monos, block_size):
        self.poset = poset
        self.reals = frozenset(reals)
        self.ph_to_block = dict(ph_to_block)
        self.monos = dict(monos)
        self.block_size = block_size


def state_prefix(block, rel, state):
    """Workspace for eliminating chain (+) block ahead of a next copy."""
    k = state.chain_length
    chain_poset = Poset.build(range(1, k + 1), [(i, i + 1) for i in range(1, k)])
    w1 = rplus(chain_poset, block, set(state.interface))
    off1 = rplus_offset(chain_poset, block)
    off2 = rplus_offset(w1, block)
    w2 = rplus(w1, block, {(x + off1, y) for x, y in rel})
    monos = {i: mono_var("c%d" % i) for i in range(1, k + 1)}
    for e in block.elements:
        monos[e + off1] = mono_var("p%d" % e)
        monos[e + off2] = mono_var("n%d" % e)
    reals = set(range(1, k + 1)) | {e + off1 for e in block.elements}
    ph = {e + off2: e for e in block.elements}
    return Prefix(w2, reals, ph, monos, len(block.elements))


def entry_prefix(block, rel, seed, seed_rel):
    """Workspace for eliminating seed (+) block ahead of a next copy."""
    w1 = rplus(seed, block, set(seed_rel))
    off1 = rplus_offset(seed, block)
    off2 = rplus_offset(w1, block)
    w2 = rplus(w1, block, {(x + off1, y) for x, y in rel})
    monos = {e: mono_var("a%d" % e) for e in seed.elements}
    for e in block.elements:
        monos[e + off1] = mono_var("p%d" % e)
        monos[e + off2] = mono_var("n%d" % e)
    reals = set(seed.elements) | {e + off1 for e in block.elements}
    ph = {e + off2: e for e in block.elements}
    return Prefix(w2, reals, ph, monos, len(block.elements))


def eliminate_prefix(prefix):
    """All terminal branches of the elimination, combined by (target state,
    argument substitution) with coefficients summed."""
    leaves = []
    _eliminate(prefix.poset, prefix.reals, prefix.monos,
               RationalFunction.one(), prefix, leaves)
    combined = {}
    for coef, state, chain_args, mults in leaves:
        key = (state, chain_args, mults)
        combined.setdefault(key, []).append(coef)
    terms = [Term(rf_sum(parts), state, chain_args, mults)
             for (state, chain_args, mults), parts in combined.items()]
    terms.sort(key=lambda t: (t.target.sort_key(), t.chain_args, t.copy_mults))
    return terms


def _eliminate(poset, reals, monos, coef, prefix, leaves):
    removable = sorted(
        b for b in reals
        if len(poset.lower_covers(b)) <= 1 and len(poset.upper_covers(b)) <= 1)
    if removable:
        b = removable[0]
        mb = monos[b]
        lowers = poset.lower_covers(b)
        uppers = poset.upper_covers(b)
        sub_poset = poset.delete(b)
        sub_reals = reals - {b}
        monos_g = dict(monos)
        del monos_g[b]
        if uppers:
            c = uppers[0]
            monos_g[c] = mono_mul(mb, monos_g[c])
        _eliminate(sub_poset, sub_reals, monos_g, coef.over(mb), prefix, leaves)
        if lowers:
            a = lowers[0]
            monos_h = dict(monos)
            del monos_h[b]
            monos_h[a] = mono_mul(monos_h[a], mb)
            coef_h = (coef * Polynomial.term(mb, -1)).over(mb)
            _eliminate(sub_poset, sub_reals, monos_h, coef_h, prefix, leaves)
        return
    pair = None
    ordered = sorted(reals)
    for i, u in enumerate(ordered):
        for v in ordered[i + 1:]:
            if not poset.comparable(u, v):
                pair = (u, v)
                break
        if pair:
            break
    if pair is None:
        leaves.append(_leaf(poset, reals, monos, coef, prefix))
        return
    u, v = pair
    for m_set, sign in (((u,), 1), ((v,), 1), ((u, v), -1)):
        glued_poset, glued = poset.ple(m_set, pair)
        monos2 = dict(monos)
        prod = ()
        for e in m_set:
            prod = mono_mul(prod, monos2.pop(e))
        monos2[glued] = prod
        reals2 = (reals - set(m_set)) | {glued}
        _eliminate(glued_poset, reals2, monos2, coef * sign, prefix, leaves)


def _leaf(poset, reals, monos, coef, prefix):
    chain = sorted(reals, key=lambda e: len(poset.below(e) & reals))
    for x, y in zip(chain, chain[1:]):
        assert poset.lt(x, y), "terminal elements do not form a chain"
    if len(chain) >= prefix.block_size and prefix.block_size > 0:
        raise StateBoundExceeded(
            "terminal chain of length %d for a block of size %d"
            % (len(chain), prefix.block_size))
    interface = set()
    for pos, c in enumerate(chain, start=1):
        for y in poset.upper_covers(c):
            e = prefix.ph_to_block.get(y)
            if e is not None:
                interface.add((pos, e))
    state = FrontierState(len(chain), frozenset(interface))
    chain_args = tuple(monos[c] for c in chain)
    mults = []
    for ph, e in prefix.ph_to_block.items():
        base = ("n%d" % e, 1)
        rest = tuple(p for p in monos[ph] if p != base)
        assert len(rest) == len(monos[ph]) - 1, \
            "placeholder variable escaped into a multiplier"
        if rest:
            mults.append((e, rest))
    return coef, state, chain_args, tuple(sorted(mults))


class RecurrenceSystem:
    """States, transitions and the entry decomposition for one family."""

    def __init__(self, block, rel, seed, seed_rel, entry, transitions):
        self.block = block
        self.rel = frozenset(rel)
        self.seed = seed
        self.seed_rel = frozenset(seed_rel)
        self.entry = tuple(entry)
        self.transitions = dict(transitions)
        self._base_cache = {}
        self._level_cache = {}

    @property
    def states(self):
        return sorted(self.transitions, key=FrontierState.sort_key)

    def decomposition(self, tail=None, tail_rel=()):
        return BlockDecomposition(
            block=self.block, rel=self.rel, seed=self.seed,
            seed_rel=self.seed_rel, tail=tail or Poset.empty(),
            tail_rel=frozenset(tail_rel))

    # -- base cases ---------------------------------------------------------

    def state_poset(self, state, tail=None, tail_rel=()):
        """chain (+interface) block (+tail_rel) tail, with the id map."""
        k = state.chain_length
        chain_poset = Poset.build(range(1, k + 1),
                                  [(i, i + 1) for i in range(1, k)])
        off1 = rplus_offset(chain_poset, self.block)
        out = rplus(chain_poset, self.block, set(state.interface))
        idmap = {("chain", i): i for i in range(1, k + 1)}
        for e in self.block.elements:
            idmap[("copy", 1, e)] = e + off1
        if tail is not None and tail.elements:
            offt = rplus_offset(out, tail)
            out = rplus(out, tail, {(x + off1, y) for x, y in tail_rel})
            for e in tail.elements:
                idmap[("tail", e)] = e + offt
        return out, idmap

    def base_value(self, state, tail=None, tail_rel=(), q_only=True):
        """f at n = 1 for a state: the engine's value on chain (+) block
        (+) tail, chain variables c1.., block variables p<e>, and for the
        q-specialized form every tail variable set to q."""
        key = (state, tail, frozenset(tail_rel), q_only)
        hit = self._base_cache.get(key)
        if hit is not None:
            return hit
        poset, idmap = self.state_poset(state, tail, tail_rel)
        bind = {}
        keep = set()
        for spec, wid in idmap.items():
            if spec[0] == "chain":
                bind[wid] = "c%d" % spec[1]
                keep.add(bind[wid])
            elif spec[0] == "copy":
                bind[wid] = "p%d" % spec[2]
                keep.add(bind[wid])
            else:
                bind[wid] = "b%d" % spec[1]
        f = engine.gfun(poset, bind)
        if q_only:
            f = f.specialize_q(keep)
        self._base_cache[key] = f
        return f

    # -- iteration ------------------------------------------------------

    def _levels(self, upto, tail, tail_rel):
        """Multivariate bottom-up iteration, copies named p<j>_<e>."""
        key = (tail, frozenset(tail_rel))
        levels = self._level_cache.setdefault(key, {})
        if 1 not in levels:
            ren = {"p%d" % e: mono_var("p1_%d" % e)
                   for e in self.block.elements}
            levels[1] = {
                s: self.base_value(s, tail, tail_rel, q_only=False).substitute(ren)
                for s in self.transitions}
        m = max(levels)
        while m < upto:
            prev = levels[m]
            m += 1
            cur = {}
            for s, tr in self.transitions.items():
                cur[s] = self._apply_terms(tr.terms, prev, m)
            levels[m] = cur
        return levels

    def _apply_terms(self, terms, prev, m):
        """Sum of coef * F_target[m-1] under each term's substitution; the
        result uses copies 1..m."""
        ren = {"p%d" % e: mono_var("p1_%d" % e) for e in self.block.elements}
        parts = []
        for t in terms:
            sub = {}
            for i, arg in enumerate(t.chain_args, start=1):
                sub["c%d" % i] = mono_subst(arg, ren)
            mults = dict(t.copy_mults)
            for e in self.block.elements:
                sub["p1_%d" % e] = mono_mul(mono_subst(mults.get(e, ()), ren),
                                            mono_var("p2_%d" % e))
            for j in range(2, m):
                for e in self.block.elements:
                    sub["p%d_%d" % (j, e)] = mono_var("p%d_%d" % (j + 1, e))
            f = prev[t.target].substitute(sub)
            parts.append(t.coef.substitute(ren) * f)
        return rf_sum(parts)

    def _eval_q(self, n, tail, tail_rel):
        """Top-down q-specialized iteration.

        Once every deep variable is q, each recursive call receives
        concrete powers of q for its frontier and first-copy arguments, so
        every value is univariate; memoizing on (state, level, argument
        exponents) keeps the call tree polynomial.
        """
        memo = self._level_cache.setdefault(("q", tail, frozenset(tail_rel)), {})
        block_elts = tuple(sorted(self.block.elements))

        def arg_exponents(t, exps):
            cexps = tuple(sum(exps[v] * e for v, e in arg)
                          for arg in t.chain_args)
            mults = dict(t.copy_mults)
            pexps = tuple(1 + sum(exps[v] * e for v, e in mults.get(b, ()))
                          for b in block_elts)
            return cexps, pexps

        def eval_state(s, m, cexps, pexps):
            key = (s, m, cexps, pexps)
            hit = memo.get(key)
            if hit is not None:
                return hit
            exps = {"c%d" % i: k for i, k in enumerate(cexps, start=1)}
            exps.update(("p%d" % b, k) for b, k in zip(block_elts, pexps))
            sub = {v: mono_var(Q, k) for v, k in exps.items()}
            if m == 1:
                f = self.base_value(s, tail, tail_rel, q_only=True)
                f = f.substitute(sub)
            else:
                parts = []
                for t in self.transitions[s].terms:
                    tc, tp = arg_exponents(t, exps)
                    parts.append(t.coef.substitute(sub)
                                 * eval_state(t.target, m - 1, tc, tp))
                f = rf_sum(parts)
            memo[key] = f
            return f

        ones = {}
        for t in self.entry:
            for arg in t.chain_args:
                ones.update((v, 1) for v, _ in arg)
            for _, mult in t.copy_mults:
                ones.update((v, 1) for v, _ in mult)
        for e in self.seed.elements:
            ones["a%d" % e] = 1
        for b in block_elts:
            ones["p%d" % b] = 1
        qsub = {v: mono_var(Q) for v in ones}
        parts = []
        for t in self.entry:
            tc, tp = arg_exponents(t, ones)
            parts.append(t.coef.substitute(qsub).specialize_q()
                         * eval_state(t.target, n - 1, tc, tp))
        return rf_sum(parts)

    def evaluate(self, n, tail=None, tail_rel=(), q_only=True):
        """f_{X_n}; q-specialized by default, multivariate in the element
        variables x<id> of the assembled poset otherwise."""
        if n < 1:
            raise ValueError("n must be >= 1")
        tail = tail or Poset.empty()
        tail_rel = frozenset(tail_rel)
        deco = self.decomposition(tail, tail_rel)
        if n == 1:
            x1, _ = deco.assemble(1)
            return engine.gfun_q(x1) if q_only else engine.gfun(x1)
        if q_only:
            return self._eval_q(n, tail, tail_rel)
        levels = self._levels(n - 1, tail, tail_rel)
        f = self._apply_terms(self.entry, levels[n - 1], n)
        _, idmap = deco.assemble(n)
        final = {}
        for spec, wid in idmap.items():
            if spec[0] == "seed":
                final["a%d" % spec[1]] = mono_var("x%d" % wid)
            elif spec[0] == "copy":
                final["p%d_%d" % (spec[1], spec[2])] = mono_var("x%d" % wid)
            else:
                final["b%d" % spec[1]] = mono_var("x%d" % wid)
        return f.substitute(final)

    # -- rendering ------------------------------------------------------

    def _state_names(self):
        return {s: "F%d" % (i + 1) for i, s in enumerate(self.states)}

    def _term_str(self, t, names):
        args = [mono_str(a) for a in t.chain_args]
        mults = dict(t.copy_mults)
        for e in sorted(self.block.elements):
            args.append(mono_str(mono_mul(mults.get(e, ()), mono_var(Q))))
        return "(%s) * %s[n-1](%s)" % (t.coef, names[t.target], ", ".join(args))

    def emit_text(self, tail=None, tail_rel=(), include_base=True):
        """Human-readable listing of the system, entry first, with the
        next-copy arguments displayed under the all-q convention."""
        names = self._state_names()
        lines = ["block: %d elements, %d states, %d entry terms"
                 % (len(self.block.elements), len(self.transitions),
                    len(self.entry))]
        lines.append("F0[n] = f of the full poset with n block copies")
        for t in self.entry:
            lines.append("  + " + self._term_str(t, names))
        for s in self.states:
            lines.append("%s[n]: frontier %s" % (names[s], s))
            for t in self.transitions[s].terms:
                lines.append("  + " + self._term_str(t, names))
            if include_base:
                base = self.base_value(s, tail, tail_rel, q_only=False)
                lines.append("  %s[1] = %s" % (names[s], base))
        return "\n".join(lines) + "\n"

    def to_json(self, tail=None, tail_rel=(), include_base=True):
        names = self._state_names()

        def state_json(s):
            return {"name": names[s], "chain": s.chain_length,
                    "interface": sorted(map(list, s.interface))}

        def term_json(t):
            argmap = {}
            for i, arg in enumerate(t.chain_args, start=1):
                argmap["c%d" % i] = {v: e for v, e in arg}
            mults = dict(t.copy_mults)
            for e in sorted(self.block.elements):
                m = mono_mul(mults.get(e, ()), mono_var("n%d" % e))
                argmap["p%d" % e] = {v: f for v, f in m}
            return {"coef": t.coef.to_json(), "dst": names[t.target],
                    "argmap": argmap}

        out = {
            "states": [state_json(s) for s in self.states],
            "entry": [term_json(t) for t in self.entry],
            "transitions": [
                {"src": names[s],
                 "terms": [term_json(t) for t in self.transitions[s].terms]}
                for s in self.states],
        }
        if include_base:
            out["base"] = {
                names[s]: self.base_value(s, tail, tail_rel,
                                          q_only=False).to_json()
                for s in self.states}
        return out


def discover_states(block, rel, seed=None, seed_rel=()):
    """Breadth-first closure of the frontier states reachable from the
    seed, with one combined Transition per state."""
    seed = seed or Poset.empty()
    entry = eliminate_prefix(entry_prefix(block, rel, seed, seed_rel))
    transitions = {}
    queue = [t.target for t in entry]
    while queue:
        s = queue.pop(0)
        if s in transitions:
            continue
        terms = eliminate_prefix(state_prefix(block, rel, s))
        transitions[s] = Transition(s, tuple(terms))
        for t in terms:
            if t.target not in transitions:
                queue.append(t.target)
    return RecurrenceSystem(block, rel, seed, frozenset(seed_rel),
                            entry, transitions)


def evaluate(system, n, tail=None, tail_rel=(), q_only=True):
    return system.evaluate(n, tail, tail_rel, q_only)


def emit_system(system, tail=None, tail_rel=()):
    return system.emit_text(tail, tail_rel)
