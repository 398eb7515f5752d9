"""Cutoff-machine compiler, embedding, and the lemma's checkable content."""

import pytest

from bgslab import bgs, codec, quasitrivial as qt, sat
from bgslab.codec import pair, triple_decode, unpair
from bgslab.machine import ClockSpec, decode_machine, encode_machine, run, run_clocked

from helpers import LOOPER

KS = range(11)


@pytest.fixture(scope="module")
def machines():
    return {k: qt.build_qt(k) for k in KS}


@pytest.fixture(scope="module")
def records(machines):
    return {k: qt.embed(machines[k]) for k in KS}


# --- compiler ----------------------------------------------------------------

def test_cutoff_spec_agrees_with_decider():
    spec = qt.CutoffSpec.compute(12)
    assert len(spec.answers) == 13
    for x in range(13):
        assert spec.answers[x] == sat.decider(x).witness


def test_cutoff_zero_is_behaviorally_constant_zero(machines):
    table = machines[0].table
    for x in range(101):
        result = run(table, x, 10_000)
        assert result.halted and result.output == 0


def test_outputs_match_decider_below_cutoff(machines):
    for k in (5, 11):
        q = machines[k] if k in machines else qt.build_qt(k)
        for x in range(k + 1):
            assert run(q.table, x, 10_000).output == sat.decider(x).witness


def test_outputs_zero_above_cutoff(machines):
    for k in (0, 5, 10):
        table = machines[k].table
        for x in range(k + 1, k + 201):
            result = run(table, x, 10_000)
            assert result.halted and result.output == 0


def test_halts_on_window_with_recorded_steps(machines):
    table = machines[5].table
    for x in range(201):
        result = run(table, x, 10_000)
        assert result.halted and result.steps >= 0


def test_nontrivial_witness_is_written_back():
    # 11 is the least satisfiable formula code; its witness is 2 ("1")
    q = qt.build_qt(11)
    assert run(q.table, 11, 10_000).output == 2
    assert q.witnesses[11] == 2


def test_reject_path_runs_in_input_length(machines):
    table = machines[3].table
    for x in range(4, 120):
        assert run(table, x, 10_000).steps == len(codec.to_dyadic(x))


def test_cutoff_too_large():
    with pytest.raises(qt.CutoffTooLargeError):
        qt.build_qt(33)
    qt.build_qt(33, k_max=64)  # explicit limit admits it


def test_goedel_number_roundtrips(machines):
    q = machines[4]
    assert decode_machine(q.m) == q.table
    assert encode_machine(q.table) == q.m


def test_distinct_cutoffs_give_distinct_machines():
    ms = [qt.build_qt(k).m for k in (1, 2, 3)]
    assert len(set(ms)) == 3


# --- clock offset and embedding ------------------------------------------------

def test_measure_b_is_positive_and_reproducible(machines):
    for k in (0, 3, 7):
        q = machines[k]
        b1, b2 = qt.measure_b(q), qt.measure_b(q)
        assert b1 == b2 >= 1


def test_measure_b_monotone_in_cutoff(machines):
    assert qt.measure_b(machines[5]) >= qt.measure_b(machines[3])


def test_embedding_decodes_back(records):
    for k, record in records.items():
        assert triple_decode(record.n) == (record.m, 2, record.b_m)


def test_embedding_clock_exponent_is_always_two(records):
    assert {triple_decode(r.n)[1] for r in records.values()} == {2}


def test_distinct_cutoffs_give_distinct_indices(records):
    assert len({r.n for r in records.values()}) == len(KS)


# --- no interruption -----------------------------------------------------------

def test_clock_never_interrupts_below_and_above_cutoff(records):
    for k in (0, 5, 10):
        report = qt.verify_no_interrupt(records[k], 200)
        assert report.ok and report.failed_at is None
        assert report.checked == max(k, 200) + 1


def test_clocked_runs_agree_bit_for_bit(machines, records):
    q, record = machines[6], records[6]
    clock = ClockSpec(2, record.b_m)
    for x in range(100):
        free = run(q.table, x, 10_000)
        clocked = run_clocked(q.table, clock, x)
        assert (clocked.output, clocked.steps, clocked.interrupted) == \
            (free.output, free.steps, False)


def test_unit_offset_still_never_interrupts(records):
    # this compiler's runtimes stay below |x|^2 + 1 on every feasible input
    # (no satisfiable formula code has dyadic length < 3), so even the
    # degenerate offset cannot bite; the honest negative control follows
    crippled = qt.EmbeddingRecord(m=records[3].m, k=3, b_m=1,
                                  n=codec.triple_encode(records[3].m, 2, 1))
    assert qt.verify_no_interrupt(crippled, 100).ok


def test_no_interrupt_detects_a_slow_machine():
    m = encode_machine(LOOPER)
    fake = qt.EmbeddingRecord(m=m, k=0, b_m=1, n=codec.triple_encode(m, 2, 1))
    report = qt.verify_no_interrupt(fake, 50)
    assert not report.ok and report.failed_at == 0


# --- crucial step ---------------------------------------------------------------

def test_oracle_prediction_is_frozen():
    for k in KS:
        assert qt.predicted_least_counterexample(k) == 93


def test_oracle_prediction_exceeds_cutoff():
    for k in KS:
        z = qt.predicted_least_counterexample(k)
        x, _ = unpair(z)
        assert x >= k + 1  # the failing formula lies beyond the cutoff
        assert z >= x  # pairing monotonicity
        assert z >= k + 1  # hence the full inequality


def test_crucial_step_rows_pass(records):
    for k in KS:
        row = qt.verify_crucial_step(records[k])
        assert row.passed
        assert row.status == "found"
        assert row.z == row.z_pred == 93
        assert row.z >= k + 1


def test_crucial_step_budget_too_small(records):
    with pytest.raises(qt.BudgetTooSmallError):
        qt.verify_crucial_step(records[0], budget=50)


def test_crucial_step_explicit_budget(records):
    row = qt.verify_crucial_step(records[2], budget=500)
    assert row.passed and row.z == 93


# --- restriction identity --------------------------------------------------------

def test_restriction_table_empty():
    assert qt.restriction_table([]) == []


def test_restriction_table_rows_agree(records):
    rows = qt.restriction_table(range(7))
    assert len(rows) == 7
    for row in rows:
        assert row.passed
        assert row.f_star_z == row.f_bgs_z == row.z_pred
        assert row.n == records[row.k].n


def test_restriction_z_matches_oracle_pointwise():
    rows = qt.restriction_table(range(5))
    predictions = [qt.predicted_least_counterexample(k) for k in range(5)]
    assert [row.f_bgs_z for row in rows] == predictions
    # strictness in k is not assumed: these cutoffs share one prediction
    assert len(set(predictions)) == 1


def test_star_side_equals_index_side(machines, records):
    star = qt.star_counterexample(machines[4], 200)
    direct = bgs.counterexample(bgs.BgsIndex.from_natural(records[4].n), 200)
    assert star == direct


def test_clock_offset_increase_preserves_found_value(machines, records):
    # a larger offset can only loosen a clock that never fired
    record = records[2]
    loose = bgs.BgsIndex.from_natural(codec.triple_encode(record.m, 2, record.b_m + 10))
    tight = bgs.BgsIndex.from_natural(record.n)
    assert bgs.counterexample(loose, 200).z == bgs.counterexample(tight, 200).z


def test_clocked_steps_stay_strictly_under_bound(machines, records):
    q, record = machines[8], records[8]
    clock = ClockSpec(2, record.b_m)
    for x in range(150):
        assert run_clocked(q.table, clock, x).steps < clock.bound(x)


# --- largest supported cutoff ----------------------------------------------------

def test_cutoff_32_writes_both_witness_shapes_and_passes():
    # below 32 both a "1" witness (x = 11) and a "0" witness (x = 29) occur
    q = qt.build_qt(32)
    assert run(q.table, 11, 10_000).output == 2
    assert run(q.table, 29, 10_000).output == 1
    record = qt.embed(q)
    row = qt.verify_crucial_step(record)
    assert row.passed
    assert row.z == 2560  # pair(67, 4): the least satisfiable code beyond 32
    assert pair(*codec.unpair(row.z)) == row.z and codec.unpair(row.z) == (67, 4)
    assert qt.verify_no_interrupt(record, 300).ok
    # while it plays the decider's role the scan finds nothing: a budget
    # ending exactly at the predicted witness exhausts
    index = bgs.BgsIndex.from_natural(record.n)
    assert not bgs.counterexample(index, 2560).found
    assert bgs.counterexample(index, 2561).z == 2560


# --- composite check --------------------------------------------------------------

def test_lemma_check_all_green():
    rows = qt.lemma_check(range(4), window=60)
    assert all(row.passed and row.no_interrupt and row.restriction_equal
               for row in rows)
    assert [row.k for row in rows] == [0, 1, 2, 3]
