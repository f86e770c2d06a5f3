"""A small SMT-LIB v2 solver for quantifier-free boolean + linear integer
problems over finite domains.

Reads a problem on standard input, prints ``sat``/``unsat``/``unknown`` on
the first line and, for sat, a ``(model ...)`` block with one define-fun
per declared constant. Intended as a drop-in solver command for the
monitor's encoder output; any SMT-LIB-conformant solver can be used
instead. Integer constants must be given finite bounds by the asserted
constraints (the encoder always does this), otherwise the solver answers
``unknown``.

Supported forms: set-logic/set-option/set-info (ignored), declare-const,
declare-fun with zero arity, assert, check-sat, get-model, exit. Terms:
true false, integer literals, (- k), and or not => = ite < <= > >= + - *.

Search is chronological backtracking in declaration order with watched
re-evaluation, unit propagation on equalities/implications/clauses, and
dedicated pruning for boolean cardinality sums.
"""

from __future__ import annotations

import sys

BIG = 10**9


class Unsupported(Exception):
    pass


# ---------------------------------------------------------------------------
# S-expression parsing
# ---------------------------------------------------------------------------


def tokenize(text: str):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            out.append(ch)
            i += 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            out.append(text[i:j])
            i = j
    return out


def parse_sexprs(tokens):
    stack = [[]]
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            done = stack.pop()
            stack[-1].append(tuple(done))
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise Unsupported("unbalanced parentheses")
    return stack[0]


# ---------------------------------------------------------------------------
# Problem representation
# ---------------------------------------------------------------------------


class Problem:
    def __init__(self):
        self.var_order = []  # declaration order
        self.var_sort = {}  # name -> "Bool" | "Int"
        self.asserts = []  # flattened top-level assertions (terms)
        self.watch = {}  # var -> set of assertion indices
        self.card = {}  # assertion index -> (tuple of bool vars, int const)
        self.bounds = {}  # int var -> [lo, hi]

    def declare(self, name, sort):
        if sort not in ("Bool", "Int"):
            raise Unsupported(f"unsupported sort {sort}")
        self.var_order.append(name)
        self.var_sort[name] = sort
        if sort == "Int":
            self.bounds[name] = [-BIG, BIG]

    def add_assert(self, term):
        # flatten top-level conjunctions so unit rules see the conjuncts
        if isinstance(term, tuple) and term and term[0] == "and":
            for sub in term[1:]:
                self.add_assert(sub)
            return
        idx = len(self.asserts)
        self.asserts.append(term)
        for v in term_vars(term, self.var_sort):
            self.watch.setdefault(v, set()).add(idx)
        card = cardinality_shape(term, self.var_sort)
        if card:
            self.card[idx] = card
        self._infer_bounds(term)

    def _infer_bounds(self, term):
        if not isinstance(term, tuple) or len(term) != 3:
            return
        op, a, b = term
        if op not in ("<", "<=", ">", ">=", "="):
            return
        if isinstance(b, str) and self.var_sort.get(b) == "Int":
            a, b = b, a
            op = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "=": "="}[op]
        if not (isinstance(a, str) and self.var_sort.get(a) == "Int"):
            return
        c = const_int(b)
        if c is None:
            return
        lo, hi = self.bounds[a]
        if op == ">=":
            lo = max(lo, c)
        elif op == ">":
            lo = max(lo, c + 1)
        elif op == "<=":
            hi = min(hi, c)
        elif op == "<":
            hi = min(hi, c - 1)
        else:
            lo, hi = max(lo, c), min(hi, c)
        self.bounds[a] = [lo, hi]


def const_int(t):
    if isinstance(t, str):
        try:
            return int(t)
        except ValueError:
            return None
    if isinstance(t, tuple) and len(t) == 2 and t[0] == "-":
        inner = const_int(t[1])
        return None if inner is None else -inner
    return None


def term_vars(term, sorts, acc=None):
    if acc is None:
        acc = set()
    if isinstance(term, str):
        if term in sorts:
            acc.add(term)
    else:
        for sub in term[1:] if term and isinstance(term[0], str) else term:
            term_vars(sub, sorts, acc)
    return acc


def cardinality_shape(term, sorts):
    """Detect (= (+ (ite b 1 0) ...) K) and return (bool vars, K)."""
    if not (isinstance(term, tuple) and len(term) == 3 and term[0] == "="):
        return None
    lhs, rhs = term[1], term[2]
    k = const_int(rhs)
    if k is None:
        k = const_int(lhs)
        lhs = rhs
    if k is None or not (isinstance(lhs, tuple) and lhs and lhs[0] == "+"):
        return None
    bools = []
    for part in lhs[1:]:
        if (
            isinstance(part, tuple)
            and len(part) == 4
            and part[0] == "ite"
            and isinstance(part[1], str)
            and sorts.get(part[1]) == "Bool"
            and const_int(part[2]) == 1
            and const_int(part[3]) == 0
        ):
            bools.append(part[1])
        else:
            return None
    return tuple(bools), k


# ---------------------------------------------------------------------------
# Three-valued / interval evaluation
# ---------------------------------------------------------------------------


def eval_bool(term, asg, bounds, sorts):
    """True / False / None (unknown)."""
    if term == "true":
        return True
    if term == "false":
        return False
    if isinstance(term, str):
        return asg.get(term)
    op = term[0]
    if op == "not":
        v = eval_bool(term[1], asg, bounds, sorts)
        return None if v is None else (not v)
    if op == "and":
        unknown = False
        for sub in term[1:]:
            v = eval_bool(sub, asg, bounds, sorts)
            if v is False:
                return False
            if v is None:
                unknown = True
        return None if unknown else True
    if op == "or":
        unknown = False
        for sub in term[1:]:
            v = eval_bool(sub, asg, bounds, sorts)
            if v is True:
                return True
            if v is None:
                unknown = True
        return None if unknown else False
    if op == "=>":
        a = eval_bool(term[1], asg, bounds, sorts)
        if a is False:
            return True
        b = eval_bool(term[2], asg, bounds, sorts)
        if b is True:
            return True
        if a is True and b is False:
            return False
        return None
    if op == "ite":
        c = eval_bool(term[1], asg, bounds, sorts)
        if c is None:
            x = eval_bool(term[2], asg, bounds, sorts)
            y = eval_bool(term[3], asg, bounds, sorts)
            return x if x == y else None
        return eval_bool(term[2 if c else 3], asg, bounds, sorts)
    if op in ("<", "<=", ">", ">=", "="):
        # '=' over booleans is also legal
        if op == "=" and is_bool_term(term[1], sorts):
            a = eval_bool(term[1], asg, bounds, sorts)
            b = eval_bool(term[2], asg, bounds, sorts)
            if a is None or b is None:
                return None
            return a == b
        alo, ahi = eval_int(term[1], asg, bounds, sorts)
        blo, bhi = eval_int(term[2], asg, bounds, sorts)
        if op == "<":
            if ahi < blo:
                return True
            if alo >= bhi:
                return False
        elif op == "<=":
            if ahi <= blo:
                return True
            if alo > bhi:
                return False
        elif op == ">":
            if alo > bhi:
                return True
            if ahi <= blo:
                return False
        elif op == ">=":
            if alo >= bhi:
                return True
            if ahi < blo:
                return False
        else:  # =
            if alo == ahi == blo == bhi:
                return True
            if ahi < blo or bhi < alo:
                return False
        return None
    raise Unsupported(f"boolean operator {op!r}")


def is_bool_term(term, sorts):
    if term in ("true", "false"):
        return True
    if isinstance(term, str):
        return sorts.get(term) == "Bool"
    return term[0] in ("not", "and", "or", "=>", "<", "<=", ">", ">=", "=") or (
        term[0] == "ite" and is_bool_term(term[2], sorts)
    )


def eval_int(term, asg, bounds, sorts):
    """Interval [lo, hi] of an arithmetic term under the partial assignment."""
    c = const_int(term)
    if c is not None:
        return c, c
    if isinstance(term, str):
        v = asg.get(term)
        if v is not None:
            return v, v
        return tuple(bounds[term])
    op = term[0]
    if op == "+":
        lo = hi = 0
        for sub in term[1:]:
            l, h = eval_int(sub, asg, bounds, sorts)
            lo += l
            hi += h
        return lo, hi
    if op == "-":
        if len(term) == 2:
            l, h = eval_int(term[1], asg, bounds, sorts)
            return -h, -l
        lo, hi = eval_int(term[1], asg, bounds, sorts)
        for sub in term[2:]:
            l, h = eval_int(sub, asg, bounds, sorts)
            lo, hi = lo - h, hi - l
        return lo, hi
    if op == "*":
        lo = hi = 1
        for sub in term[1:]:
            l, h = eval_int(sub, asg, bounds, sorts)
            cands = (lo * l, lo * h, hi * l, hi * h)
            lo, hi = min(cands), max(cands)
        return lo, hi
    if op == "ite":
        cond = eval_bool(term[1], asg, bounds, sorts)
        if cond is True:
            return eval_int(term[2], asg, bounds, sorts)
        if cond is False:
            return eval_int(term[3], asg, bounds, sorts)
        l1, h1 = eval_int(term[2], asg, bounds, sorts)
        l2, h2 = eval_int(term[3], asg, bounds, sorts)
        return min(l1, l2), max(h1, h2)
    raise Unsupported(f"arithmetic operator {op!r}")


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


class Solver:
    def __init__(self, problem: Problem):
        self.p = problem
        self.asg = {}
        self.trail = []

    def solve(self):
        for v, (lo, hi) in self.p.bounds.items():
            if lo < -(10**8) or hi > 10**8:
                return "unknown", None
            if lo > hi:
                return "unsat", None
        if not self._propagate(range(len(self.p.asserts))):
            return "unsat", None
        if self._search(0):
            return "sat", dict(self.asg)
        return "unsat", None

    def _search(self, pos) -> bool:
        order = self.p.var_order
        n = len(order)
        while pos < n and order[pos] in self.asg:
            pos += 1
        if pos == n:
            return self._all_satisfied()
        var = order[pos]
        if self.p.var_sort[var] == "Bool":
            values = (False, True)
        else:
            lo, hi = self.p.bounds[var]
            values = range(lo, hi + 1)
        for val in values:
            mark = len(self.trail)
            if self._assign(var, val) and self._search(pos + 1):
                return True
            self._undo(mark)
        return False

    def _all_satisfied(self) -> bool:
        p = self.p
        return all(
            eval_bool(t, self.asg, p.bounds, p.var_sort) is True for t in p.asserts
        )

    def _assign(self, var, val) -> bool:
        self.asg[var] = val
        self.trail.append(var)
        return self._propagate(self.p.watch.get(var, ()))

    def _undo(self, mark):
        while len(self.trail) > mark:
            del self.asg[self.trail.pop()]

    def _propagate(self, dirty) -> bool:
        p = self.p
        queue = list(dirty)
        while queue:
            idx = queue.pop()
            term = p.asserts[idx]
            forced = []
            card = p.card.get(idx)
            if card:
                ok = self._check_card(card, forced)
            else:
                status = eval_bool(term, self.asg, p.bounds, p.var_sort)
                if status is False:
                    return False
                ok = True
                if status is None:
                    self._unit(term, forced)
            if not ok:
                return False
            for var, val in forced:
                cur = self.asg.get(var)
                if cur is None:
                    self.asg[var] = val
                    self.trail.append(var)
                    queue.extend(p.watch.get(var, ()))
                elif cur != val:
                    return False
        return True

    def _check_card(self, card, forced) -> bool:
        bools, k = card
        true = sum(1 for b in bools if self.asg.get(b) is True)
        free = [b for b in bools if self.asg.get(b) is None]
        if true > k or true + len(free) < k:
            return False
        if free:
            if true == k:
                forced.extend((b, False) for b in free)
            elif true + len(free) == k:
                forced.extend((b, True) for b in free)
        return True

    def _unit(self, term, forced):
        """Derive forced assignments from an assertion that must hold."""
        p = self.p
        if isinstance(term, str):
            forced.append((term, True))
            return
        op = term[0]
        if op == "not" and isinstance(term[1], str):
            forced.append((term[1], False))
        elif op == "=" and len(term) == 3:
            for x, other in ((term[1], term[2]), (term[2], term[1])):
                if isinstance(x, str) and x in p.var_sort and x not in self.asg:
                    if p.var_sort[x] == "Bool":
                        v = eval_bool(other, self.asg, p.bounds, p.var_sort)
                        if v is not None:
                            forced.append((x, v))
                    else:
                        lo, hi = eval_int(other, self.asg, p.bounds, p.var_sort)
                        if lo == hi:
                            forced.append((x, lo))
                    return
        elif op == "=>":
            a = eval_bool(term[1], self.asg, p.bounds, p.var_sort)
            if a is True:
                self._unit(term[2], forced)
            else:
                b = eval_bool(term[2], self.asg, p.bounds, p.var_sort)
                if b is False:
                    self._unit(neg(term[1]), forced)
        elif op == "or":
            unknowns = []
            for sub in term[1:]:
                v = eval_bool(sub, self.asg, p.bounds, p.var_sort)
                if v is True:
                    return
                if v is None:
                    unknowns.append(sub)
                    if len(unknowns) > 1:
                        return
            if len(unknowns) == 1:
                self._unit(unknowns[0], forced)


def neg(term):
    if isinstance(term, tuple) and term and term[0] == "not":
        return term[1]
    return ("not", term)


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def run(text: str) -> str:
    problem = Problem()
    lines = []
    status, model = None, None
    for form in parse_sexprs(tokenize(text)):
        if not isinstance(form, tuple) or not form:
            raise Unsupported(f"bad top-level form {form!r}")
        head = form[0]
        if head in ("set-logic", "set-option", "set-info", "exit"):
            continue
        if head == "declare-const":
            problem.declare(form[1], form[2])
        elif head == "declare-fun":
            if form[2] != ():
                raise Unsupported("only zero-arity declare-fun is supported")
            problem.declare(form[1], form[3])
        elif head == "assert":
            problem.add_assert(form[1])
        elif head == "check-sat":
            status, model = Solver(problem).solve()
            lines.append(status)
        elif head == "get-model":
            if status != "sat":
                lines.append("(error \"model is not available\")")
                continue
            out = ["(model"]
            for v in problem.var_order:
                sort = problem.var_sort[v]
                val = model.get(v)
                if val is None:  # unconstrained: pick a default in bounds
                    val = False if sort == "Bool" else problem.bounds[v][0]
                if sort == "Bool":
                    txt = "true" if val else "false"
                else:
                    txt = str(val) if val >= 0 else f"(- {-val})"
                out.append(f"  (define-fun {v} () {sort} {txt})")
            out.append(")")
            lines.append("\n".join(out))
        else:
            raise Unsupported(f"unsupported command {head!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def main() -> int:
    text = sys.stdin.read()
    try:
        sys.stdout.write(run(text))
    except Unsupported as exc:
        sys.stdout.write(f"unknown\n; {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
