"""Cutoff machines: compile, clock, embed, and check the key inequality.

A cutoff machine with parameter k reproduces the truth-table decider's
least witness on every input x <= k and outputs 0 on every input beyond
the cutoff.  It is compiled as a prefix trie over the dyadic strings of
0..k that erases the tape while reading, so that

* on x <= k the full input is identified and the stored witness string is
  written back at the tape origin (2|x| + 1 steps when the witness is
  nonempty, |x| + 1 steps when it is 0), and
* on x > k the run erases and halts in exactly |x| steps, a bound that is
  linear by construction, not by measurement.

The clock offset b_m is measured from the compiled machine's own worst
runtime below the cutoff plus an analytic slack for the dispatch depth,
so the quadratic clock C_(2, b_m) can never interrupt it.  Embedding the
machine at index <m, 2, b_m> then forces the least counterexample of the
embedded pair to land beyond the cutoff; `verify_crucial_step` checks
that against an independent double-enumeration oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import bgs, sat
from .codec import CnfFormula, decode_cnf, from_dyadic, pair, to_dyadic, triple_encode
from .machine import (
    BLANK,
    HALT,
    MOVE_L,
    MOVE_R,
    ClockSpec,
    Transition,
    TransitionTable,
    decode_machine,
    encode_machine,
    run,
    run_clocked,
)

DEFAULT_K_MAX = 32
_MEASURE_FUEL = 100_000


class CutoffTooLargeError(ValueError):
    pass


class BudgetTooSmallError(RuntimeError):
    pass


@dataclass(frozen=True)
class CutoffSpec:
    """The decider's answer table on the initial segment [0, k]."""

    k: int
    answers: tuple[int, ...]  # answers[x] = least witness of x, 0 when none

    @classmethod
    def compute(cls, k: int) -> "CutoffSpec":
        for x in range(k + 1):
            formula = decode_cnf(x)
            if formula is not None and formula.var_count > sat.BRUTE_WIDTH_LIMIT:
                raise sat.WidthExceededError(
                    f"input {x} below cutoff has {formula.var_count} variables")
        return cls(k=k, answers=tuple(sat.decider(x).witness for x in range(k + 1)))


@dataclass(frozen=True)
class QuasiTrivialMachine:
    table: TransitionTable
    m: int  # Goedel number of the table
    k: int
    witnesses: tuple[int, ...]


@dataclass(frozen=True)
class EmbeddingRecord:
    m: int
    k: int
    b_m: int
    n: int  # the index <m, 2, b_m>
    f_value: bgs.CounterexampleResult | None = None


def build_qt(k: int, k_max: int = DEFAULT_K_MAX) -> QuasiTrivialMachine:
    """Compile the cutoff-k machine as a tape-erasing prefix trie."""
    if k < 0:
        raise ValueError("cutoff must be a natural number")
    if k > k_max:
        raise CutoffTooLargeError(f"cutoff {k} exceeds the limit {k_max}")
    spec = CutoffSpec.compute(k)
    depth = len(to_dyadic(k))  # every accepted string has length <= depth

    transitions: dict[tuple[int, int], Transition] = {}
    state_ids: dict[str, int] = {}
    for length in range(depth + 1):
        for bits in itertools.product("01", repeat=length):
            state_ids["".join(bits)] = len(state_ids)
    eraser = len(state_ids)
    next_free = eraser + 1

    transitions[(eraser, 0)] = Transition(eraser, BLANK, MOVE_R)
    transitions[(eraser, 1)] = Transition(eraser, BLANK, MOVE_R)
    # (eraser, BLANK) missing: halt with the whole input block erased

    for s, sid in state_ids.items():
        if len(s) < depth:
            transitions[(sid, 0)] = Transition(state_ids[s + "0"], BLANK, MOVE_R)
            transitions[(sid, 1)] = Transition(state_ids[s + "1"], BLANK, MOVE_R)
        else:
            transitions[(sid, 0)] = Transition(eraser, BLANK, MOVE_R)
            transitions[(sid, 1)] = Transition(eraser, BLANK, MOVE_R)
        x = from_dyadic(s)
        if x > k:
            continue  # unaccepted depth-limit node: blank already halts in place
        witness_bits = to_dyadic(spec.answers[x])
        if not witness_bits:
            # witness 0: explicit halt, so tables for distinct cutoffs differ
            # even when no stored witness distinguishes them
            transitions[(sid, BLANK)] = Transition(HALT, BLANK, MOVE_L)
            continue
        # straight-line tail: walk from cell len(s) to the witness's last
        # cell, then write it right to left; every cell on the way is blank
        ops: list[tuple[int, str]] = []
        position = len(s)
        target = len(witness_bits) - 1
        ops.extend([(BLANK, MOVE_L)] * (position - target))
        ops.extend([(BLANK, MOVE_R)] * (target - position))
        for j in range(target, -1, -1):
            ops.append((int(witness_bits[j]), MOVE_L))
        state = sid
        for i, (write, move) in enumerate(ops):
            nxt = HALT if i == len(ops) - 1 else next_free
            transitions[(state, BLANK)] = Transition(nxt, write, move)
            state = next_free
            if nxt != HALT:
                next_free += 1
    table = TransitionTable(state_count=next_free, transitions=transitions)
    return QuasiTrivialMachine(table=table, m=encode_machine(table), k=k,
                               witnesses=spec.answers)


def dispatch_slack(k: int) -> int:
    """Analytic bound on reject-path overhead: the trie depth."""
    return len(to_dyadic(k))


def measure_b(q: QuasiTrivialMachine) -> int:
    """Clock offset: worst measured runtime below the cutoff, plus one,
    plus the dispatch slack.  Deterministic and always >= 1."""
    worst = 0
    for x in range(q.k + 1):
        result = run(q.table, x, _MEASURE_FUEL)
        if not result.halted:
            raise RuntimeError(f"compiled machine failed to halt on {x}")
        worst = max(worst, result.steps)
    return worst + 1 + dispatch_slack(q.k)


def embed(q: QuasiTrivialMachine) -> EmbeddingRecord:
    """Place the machine in the clocked-pair set at index <m, 2, b_m>."""
    b_m = measure_b(q)
    return EmbeddingRecord(m=q.m, k=q.k, b_m=b_m, n=triple_encode(q.m, 2, b_m))


@dataclass(frozen=True)
class NoInterruptReport:
    ok: bool
    failed_at: int | None
    checked: int


def verify_no_interrupt(record: EmbeddingRecord, test_window: int = 200) -> NoInterruptReport:
    """Check that C_(2, b_m) never interrupts the machine and never changes
    its output or step count, on every x <= max(k, test_window)."""
    table = decode_machine(record.m)
    clock = ClockSpec(2, record.b_m)
    upper = max(record.k, test_window)
    for x in range(upper + 1):
        free = run(table, x, _MEASURE_FUEL)
        clocked = run_clocked(table, clock, x)
        if (clocked.interrupted or not free.halted
                or clocked.output != free.output or clocked.steps != free.steps):
            return NoInterruptReport(ok=False, failed_at=x, checked=x + 1)
    return NoInterruptReport(ok=True, failed_at=None, checked=upper + 1)


# --- independent oracle ------------------------------------------------------

def _least_witness_by_tuples(formula: CnfFormula) -> int | None:
    """Least assignment code satisfying the formula, found by enumerating
    truth tuples; shares no evaluation path with the verifier or decider."""
    w = formula.var_count
    if w > sat.BRUTE_WIDTH_LIMIT:
        raise sat.WidthExceededError(f"formula has {w} variables")
    for values in itertools.product((False, True), repeat=w):
        if all(any(values[abs(lit) - 1] == (lit > 0) for lit in clause)
               for clause in formula.clauses):
            return from_dyadic("".join("1" if v else "0" for v in values))
    return None


def predicted_least_counterexample(k: int, search_limit: int = 100_000) -> int:
    """Oracle for the embedded machine's least failing pair.

    Double enumeration: find satisfiable formula codes x > k and their
    least witnesses y, and minimize pair(x, y).  Monotonicity of the
    pairing caps both loops at the best candidate found so far.
    """
    x = k + 1
    first = None
    while x <= search_limit:
        formula = decode_cnf(x)
        if formula is not None and sat.satisfiable_brute(x):
            first = x
            break
        x += 1
    if first is None:
        raise RuntimeError(f"no satisfiable formula code in ({k}, {search_limit}]")
    witness = _least_witness_by_tuples(decode_cnf(first))
    assert witness is not None
    best = pair(first, witness)
    for x2 in range(first + 1, best + 1):
        formula = decode_cnf(x2)
        if formula is None or not sat.satisfiable_brute(x2):
            continue
        y2 = _least_witness_by_tuples(formula)
        assert y2 is not None
        best = min(best, pair(x2, y2))
    return best


# --- lemma checks ------------------------------------------------------------

@dataclass(frozen=True)
class CrucialStepRow:
    k: int
    m: int
    b_m: int
    n: int
    status: str
    z: int | None
    z_pred: int
    passed: bool


def verify_crucial_step(record: EmbeddingRecord, budget: int | None = None,
                        cache: bgs.ResultCache | None = None) -> CrucialStepRow:
    """Run the counterexample search on the embedded index and compare the
    found z against the oracle; z must also clear k + 1."""
    z_pred = predicted_least_counterexample(record.k)
    if budget is None:
        budget = z_pred + 1
    index = bgs.BgsIndex.from_natural(record.n)
    result = bgs.counterexample(index, budget, cache)
    if not result.found and budget <= z_pred:
        raise BudgetTooSmallError(
            f"budget {budget} exhausted before the predicted witness {z_pred}")
    passed = (result.found and result.z is not None
              and result.z >= record.k + 1 and result.z == z_pred)
    return CrucialStepRow(k=record.k, m=record.m, b_m=record.b_m, n=record.n,
                          status=result.status.value, z=result.z,
                          z_pred=z_pred, passed=passed)


def star_counterexample(q: QuasiTrivialMachine, budget: int,
                        cache: bgs.ResultCache | None = None) -> bgs.CounterexampleResult:
    """The counterexample value of a cutoff machine itself, defined through
    its embedding: build the index from parts rather than by decoding."""
    record = embed(q)
    index = bgs.BgsIndex(n=record.n, m=record.m, a=2, b=record.b_m)
    return bgs.counterexample(index, budget, cache)


@dataclass(frozen=True)
class RestrictionRow:
    k: int
    m: int
    b_m: int
    n: int
    status: str
    f_star_z: int | None
    f_bgs_z: int | None
    z_pred: int
    passed: bool


def restriction_table(ks, budget: int | None = None,
                      cache: bgs.ResultCache | None = None,
                      k_max: int = DEFAULT_K_MAX) -> list[RestrictionRow]:
    """Per-cutoff rows asserting that the machine-side counterexample value
    equals the embedded index's, with the crucial-step check folded in."""
    rows = []
    for k in ks:
        q = build_qt(k, k_max=k_max)
        record = embed(q)
        crucial = verify_crucial_step(record, budget, cache)
        star = star_counterexample(q, budget if budget is not None else crucial.z_pred + 1,
                                   cache)
        equal = star.found and star.z == crucial.z
        rows.append(RestrictionRow(k=k, m=record.m, b_m=record.b_m, n=record.n,
                                   status=crucial.status, f_star_z=star.z,
                                   f_bgs_z=crucial.z, z_pred=crucial.z_pred,
                                   passed=equal and crucial.passed))
    return rows


@dataclass(frozen=True)
class LemmaCheckRow:
    k: int
    m: int
    b_m: int
    n: int
    status: str
    z: int | None
    z_pred: int
    no_interrupt: bool
    restriction_equal: bool
    passed: bool


def lemma_check(ks, budget: int | None = None, window: int = 200,
                cache: bgs.ResultCache | None = None,
                k_max: int = DEFAULT_K_MAX) -> list[LemmaCheckRow]:
    """Full pipeline per cutoff: build, embed, no-interrupt scan, crucial
    step against the oracle, and the restriction identity."""
    rows = []
    for k in ks:
        q = build_qt(k, k_max=k_max)
        record = embed(q)
        ni = verify_no_interrupt(record, window)
        crucial = verify_crucial_step(record, budget, cache)
        star = star_counterexample(q, budget if budget is not None else crucial.z_pred + 1,
                                   cache)
        equal = star.found and star.z == crucial.z
        rows.append(LemmaCheckRow(k=k, m=record.m, b_m=record.b_m, n=record.n,
                                  status=crucial.status, z=crucial.z,
                                  z_pred=crucial.z_pred, no_interrupt=ni.ok,
                                  restriction_equal=equal,
                                  passed=crucial.passed and ni.ok and equal))
    return rows
