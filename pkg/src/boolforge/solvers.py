"""SAT solver adapters.

Two interchangeable backends: an embedded CDCL solver (so nothing external
is ever required) and an adapter that runs any DIMACS-speaking solver as a
subprocess.  Every SAT model is checked against the clauses before it is
returned; UNSAT answers are taken on trust from the backend.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Protocol, Sequence

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

DEFAULT_TIMEOUT = 60.0


@dataclass
class SolverVerdict:
    status: str
    model: dict[int, bool] | None = None

    @property
    def is_sat(self) -> bool:
        return self.status == SAT

    @property
    def is_unsat(self) -> bool:
        return self.status == UNSAT

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN


class Solver(Protocol):
    def solve(
        self,
        n_vars: int,
        clauses: Iterable[Sequence[int]],
        assumptions: Sequence[int] = (),
        timeout: float | None = None,
    ) -> SolverVerdict: ...


def check_model(clauses: Iterable[Sequence[int]], model: dict[int, bool]) -> bool:
    return all(
        any(model.get(abs(lit), False) == (lit > 0) for lit in cl) for cl in clauses
    )


class EmbeddedSolver:
    """Conflict-driven clause learning with watched literals and restarts."""

    def __init__(self, default_timeout: float = DEFAULT_TIMEOUT):
        self.default_timeout = default_timeout

    def solve(self, n_vars, clauses, assumptions=(), timeout=None):
        timeout = self.default_timeout if timeout is None else timeout
        deadline = time.monotonic() + timeout if timeout else None
        all_clauses = [tuple(cl) for cl in clauses]
        all_clauses += [(lit,) for lit in assumptions]
        result = _Search(n_vars, all_clauses).run(deadline)
        if result.is_sat and not check_model(all_clauses, result.model):
            raise RuntimeError("internal solver produced an invalid model")
        return result


_TRUE, _FALSE, _UNDEF = 1, 0, -1


class _Search:
    def __init__(self, n_vars: int, clauses: list[tuple[int, ...]]):
        self.n = n_vars
        self.ok = True
        # literal encoding: positive v -> 2v, negative v -> 2v+1
        self.watches: list[list[int]] = [[] for _ in range(2 * n_vars + 2)]
        self.clauses: list[list[int] | None] = []
        self.learnt_ids: list[int] = []
        self.cla_act: dict[int, float] = {}
        self.assigns = [_UNDEF] * (n_vars + 1)
        self.level = [0] * (n_vars + 1)
        self.reason: list[int] = [-1] * (n_vars + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.act = [0.0] * (n_vars + 1)
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.phase = [False] * (n_vars + 1)
        self.order: list[tuple[float, int]] = [(0.0, v) for v in range(1, n_vars + 1)]
        self.max_learnts = 4000

        for cl in clauses:
            if not self._add_clause(cl):
                self.ok = False
                return

    # -- clause plumbing ---------------------------------------------------

    def _add_clause(self, lits: tuple[int, ...]) -> bool:
        seen = set()
        cl = []
        for lit in lits:
            v = abs(lit)
            if v == 0 or v > self.n:
                raise ValueError(f"literal {lit} out of range")
            enc = 2 * v + (lit < 0)
            if enc ^ 1 in seen:
                return True  # tautology
            if enc not in seen:
                seen.add(enc)
                cl.append(enc)
        if not cl:
            return False
        if len(cl) == 1:
            return self._enqueue(cl[0], -1)
        cid = len(self.clauses)
        self.clauses.append(cl)
        self.watches[cl[0] ^ 1].append(cid)
        self.watches[cl[1] ^ 1].append(cid)
        return True

    def _lit_value(self, lit: int) -> int:
        val = self.assigns[lit >> 1]
        if val == _UNDEF:
            return _UNDEF
        return val ^ (lit & 1)

    def _enqueue(self, lit: int, reason: int) -> bool:
        val = self._lit_value(lit)
        if val != _UNDEF:
            return val == _TRUE
        v = lit >> 1
        self.assigns[v] = _TRUE ^ (lit & 1)
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)
        return True

    def _propagate(self) -> int:
        while self.qhead < len(self.trail):
            flit = self.trail[self.qhead] ^ 1
            self.qhead += 1
            ws = self.watches[flit]
            i = j = 0
            n_ws = len(ws)
            while i < n_ws:
                cid = ws[i]
                i += 1
                cl = self.clauses[cid]
                if cl is None:
                    continue
                if cl[0] == flit:
                    cl[0], cl[1] = cl[1], flit
                first = cl[0]
                fval = self.assigns[first >> 1]
                if fval != _UNDEF and fval ^ (first & 1) == _TRUE:
                    ws[j] = cid
                    j += 1
                    continue
                for k in range(2, len(cl)):
                    lk = cl[k]
                    lkval = self.assigns[lk >> 1]
                    if lkval == _UNDEF or lkval ^ (lk & 1) == _TRUE:
                        cl[1], cl[k] = lk, flit
                        self.watches[lk ^ 1].append(cid)
                        break
                else:
                    ws[j] = cid
                    j += 1
                    if fval != _UNDEF:  # first literal false: conflict
                        while i < n_ws:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        return cid
                    self._enqueue(first, cid)
            del ws[j:]
        return -1

    # -- learning ----------------------------------------------------------

    def _bump_var(self, v: int) -> None:
        self.act[v] += self.var_inc
        if self.act[v] > 1e100:
            for u in range(1, self.n + 1):
                self.act[u] *= 1e-100
            self.var_inc *= 1e-100
        heappush(self.order, (-self.act[v], v))

    def _analyze(self, conflict: int) -> tuple[list[int], int]:
        learnt = [0]
        seen = bytearray(self.n + 1)
        counter = 0
        p = -1  # asserted literal whose reason is being expanded
        index = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        cid = conflict
        while True:
            cl = self.clauses[cid]
            if cid in self.cla_act:
                self._bump_clause(cid)
            for q in cl:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and self.level[v] > 0:
                    seen[v] = 1
                    self._bump_var(v)
                    if self.level[v] == cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[index] >> 1]:
                index -= 1
            p = self.trail[index]
            v = p >> 1
            index -= 1
            seen[v] = 0
            counter -= 1
            if counter == 0:
                break
            cid = self.reason[v]
        learnt[0] = p ^ 1
        if len(learnt) == 1:
            return learnt, 0
        # watch a literal from the backjump level in position 1
        max_i = 1
        for i in range(2, len(learnt)):
            if self.level[learnt[i] >> 1] > self.level[learnt[max_i] >> 1]:
                max_i = i
        learnt[1], learnt[max_i] = learnt[max_i], learnt[1]
        return learnt, self.level[learnt[1] >> 1]

    def _bump_clause(self, cid: int) -> None:
        self.cla_act[cid] = self.cla_act.get(cid, 0.0) + self.cla_inc
        if self.cla_act[cid] > 1e20:
            for k in self.cla_act:
                self.cla_act[k] *= 1e-20
            self.cla_inc *= 1e-20

    def _backjump(self, target_level: int) -> None:
        while len(self.trail_lim) > target_level:
            bound = self.trail_lim.pop()
            for lit in reversed(self.trail[bound:]):
                v = lit >> 1
                self.phase[v] = self.assigns[v] == _TRUE
                self.assigns[v] = _UNDEF
                self.reason[v] = -1
                heappush(self.order, (-self.act[v], v))
            del self.trail[bound:]
        self.qhead = len(self.trail)

    def _reduce_learnts(self) -> None:
        locked = {self.reason[lit >> 1] for lit in self.trail}
        ranked = sorted(self.learnt_ids, key=lambda c: self.cla_act.get(c, 0.0))
        keep_from = len(ranked) // 2
        for cid in ranked[:keep_from]:
            cl = self.clauses[cid]
            if cl is None or len(cl) <= 2 or cid in locked:
                continue
            self.clauses[cid] = None
            self.cla_act.pop(cid, None)
        self.learnt_ids = [c for c in self.learnt_ids if self.clauses[c] is not None]
        self.max_learnts = int(self.max_learnts * 1.3)

    # -- main loop ---------------------------------------------------------

    def _decide(self) -> int:
        while self.order:
            _, v = heappop(self.order)
            if self.assigns[v] == _UNDEF:
                return 2 * v + (not self.phase[v])
        for v in range(1, self.n + 1):
            if self.assigns[v] == _UNDEF:
                return 2 * v + (not self.phase[v])
        return 0

    def run(self, deadline: float | None) -> SolverVerdict:
        if not self.ok:
            return SolverVerdict(UNSAT)
        if self._propagate() != -1:
            return SolverVerdict(UNSAT)
        conflicts_until_restart = restart_base = 256
        restart_count = 0
        conflicts_since_check = 0
        while True:
            conflict = self._propagate()
            if conflict != -1:
                if not self.trail_lim:
                    return SolverVerdict(UNSAT)
                learnt, back_level = self._analyze(conflict)
                self._backjump(back_level)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    cid = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[learnt[0] ^ 1].append(cid)
                    self.watches[learnt[1] ^ 1].append(cid)
                    self.learnt_ids.append(cid)
                    self._bump_clause(cid)
                    self._enqueue(learnt[0], cid)
                self.var_inc /= 0.95
                self.cla_inc /= 0.999
                conflicts_until_restart -= 1
                conflicts_since_check += 1
                if conflicts_since_check >= 128:
                    conflicts_since_check = 0
                    if deadline is not None and time.monotonic() > deadline:
                        return SolverVerdict(UNKNOWN)
                if len(self.learnt_ids) > self.max_learnts:
                    self._reduce_learnts()
                if conflicts_until_restart <= 0:
                    restart_count += 1
                    conflicts_until_restart = restart_base * _luby(restart_count)
                    self._backjump(0)
            else:
                lit = self._decide()
                if lit == 0:
                    model = {v: self.assigns[v] == _TRUE for v in range(1, self.n + 1)}
                    return SolverVerdict(SAT, model)
                self.trail_lim.append(len(self.trail))
                self._enqueue(lit, -1)


def _luby(i: int) -> int:
    """i-th element (1-based) of the Luby restart sequence."""
    k = i.bit_length()
    if i == (1 << k) - 1:
        return 1 << (k - 1)
    return _luby(i - (1 << (k - 1)) + 1)


class ExternalDimacsSolver:
    """Run `command <dimacs-file>` and read SAT-competition style output."""

    def __init__(self, command: str | Sequence[str], default_timeout: float = DEFAULT_TIMEOUT):
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.default_timeout = default_timeout

    def solve(self, n_vars, clauses, assumptions=(), timeout=None):
        timeout = self.default_timeout if timeout is None else timeout
        all_clauses = [tuple(cl) for cl in clauses]
        all_clauses += [(lit,) for lit in assumptions]
        lines = [f"p cnf {n_vars} {len(all_clauses)}"]
        lines += [" ".join(map(str, cl)) + " 0" for cl in all_clauses]
        with tempfile.TemporaryDirectory(prefix="boolforge-sat-") as tmp:
            path = os.path.join(tmp, "problem.cnf")
            with open(path, "w") as f:
                f.write("\n".join(lines) + "\n")
            try:
                proc = subprocess.run(
                    self.command + [path],
                    capture_output=True,
                    text=True,
                    timeout=timeout if timeout else None,
                )
            except (subprocess.TimeoutExpired, OSError):
                return SolverVerdict(UNKNOWN)
        status = None
        lits: list[int] = []
        for line in proc.stdout.splitlines():
            if line.startswith("s "):
                status = line[2:].strip()
            elif line.startswith("v "):
                lits += [int(tok) for tok in line[2:].split()]
        if status == "UNSATISFIABLE":
            return SolverVerdict(UNSAT)
        if status == "SATISFIABLE":
            model = {v: False for v in range(1, n_vars + 1)}
            for lit in lits:
                if lit != 0 and abs(lit) <= n_vars:
                    model[abs(lit)] = lit > 0
            if not check_model(all_clauses, model):
                raise RuntimeError(f"solver {self.command[0]!r} returned an invalid model")
            return SolverVerdict(SAT, model)
        return SolverVerdict(UNKNOWN)


def default_solver(default_timeout: float = DEFAULT_TIMEOUT) -> Solver:
    """External solver from $SOLVER_CMD when set, embedded CDCL otherwise."""
    cmd = os.environ.get("SOLVER_CMD")
    if cmd:
        return ExternalDimacsSolver(cmd, default_timeout)
    return EmbeddedSolver(default_timeout)


def solve_cnf(cnf, solver: Solver | None = None, assumptions=(), timeout=None) -> SolverVerdict:
    solver = solver or default_solver()
    return solver.solve(cnf.n_vars, cnf.clauses, assumptions, timeout)
