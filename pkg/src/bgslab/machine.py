"""Deterministic single-tape Turing machine engine with exact step accounting.

Model, fixed once:

* Tape is singly infinite to the right.  The input natural x is written as
  its dyadic string on cells 0..|x|-1, the head starts at cell 0, and all
  other cells are blank.
* Symbols are 0, 1 and BLANK.  Moves are L and R only; an L move at cell 0
  stays in place and still counts as a step.
* A "step" is one applied transition.  A missing (state, symbol) entry
  means the machine halts in place without consuming a step; a transition
  whose target is HALT applies its write and move first.
* Output is read at halt as the maximal {0,1} block starting at cell 0 and
  stopping at the first blank, decoded from dyadic.  Interrupted and
  fuel-exhausted runs output 0.

Machines are Goedel-numbered through a flat sequence code of transition
5-tuples, so that *every* natural decodes to some machine (unparsable
numbers decode to the machine with no transitions at all).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .codec import from_dyadic, to_dyadic

MACHINE_ENCODING_VERSION = "flat5-trit-1"

BLANK = 2
SYMBOLS = (0, 1, BLANK)
MOVE_L = "L"
MOVE_R = "R"
HALT = -1  # next-state sentinel


@dataclass(frozen=True)
class Transition:
    next_state: int  # HALT or a state index
    write: int
    move: str


@dataclass(frozen=True)
class TransitionTable:
    """A concrete deterministic machine; immutable after construction."""

    state_count: int
    transitions: Mapping[tuple[int, int], Transition]

    def __post_init__(self):
        if self.state_count < 1:
            raise ValueError("state_count must be >= 1")
        for (q, s), t in self.transitions.items():
            if not (0 <= q < self.state_count):
                raise ValueError(f"state {q} out of range")
            if s not in SYMBOLS or t.write not in SYMBOLS:
                raise ValueError(f"bad symbol in transition ({q}, {s})")
            if t.move not in (MOVE_L, MOVE_R):
                raise ValueError(f"bad move {t.move!r}")
            if t.next_state != HALT and not (0 <= t.next_state < self.state_count):
                raise ValueError(f"next state {t.next_state} out of range")


NULL_MACHINE = TransitionTable(state_count=1, transitions={})


@dataclass(frozen=True)
class ClockSpec:
    """Polynomial step budget |x|^a + b over the input's dyadic length."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("clock exponents and offsets must be >= 1")

    def bound(self, input_value: int) -> int:
        return len(to_dyadic(input_value)) ** self.a + self.b


@dataclass(frozen=True)
class RunResult:
    output: int
    steps: int
    interrupted: bool = False  # stopped by a polynomial clock
    fuel_exhausted: bool = False  # stopped by the raw safety fuel

    @property
    def halted(self) -> bool:
        return not self.interrupted and not self.fuel_exhausted


StepObserver = Callable[[int, int, int, int], None]  # step, state, head, symbol


def _read_output(tape: list[int]) -> int:
    block = []
    for sym in tape:
        if sym == BLANK:
            break
        block.append("01"[sym])
    return from_dyadic("".join(block))


def _simulate(table: TransitionTable, input_value: int, limit: int,
              on_step: StepObserver | None = None) -> tuple[bool, int, list[int]]:
    """Run up to `limit` applied steps; returns (halted, steps, tape).

    `halted` is true when the machine can make no further move, including
    the case where that happens at exactly `limit` steps.
    """
    tape = [int(c) for c in to_dyadic(input_value)]
    trans = table.transitions
    state = 0
    head = 0
    steps = 0
    while True:
        sym = tape[head] if head < len(tape) else BLANK
        t = trans.get((state, sym))
        if t is None:
            return True, steps, tape
        if steps == limit:
            return False, steps, tape
        if on_step is not None:
            on_step(steps, state, head, sym)
        while head >= len(tape):
            tape.append(BLANK)
        tape[head] = t.write
        if t.move == MOVE_R:
            head += 1
        elif head > 0:
            head -= 1
        steps += 1
        state = t.next_state
        if state == HALT:
            return True, steps, tape


def run(table: TransitionTable, input_value: int, max_steps: int,
        on_step: StepObserver | None = None) -> RunResult:
    """Unclocked execution with a safety fuel bound (max_steps >= 1)."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    halted, steps, tape = _simulate(table, input_value, max_steps, on_step)
    if halted:
        return RunResult(output=_read_output(tape), steps=steps)
    return RunResult(output=0, steps=max_steps, fuel_exhausted=True)


def run_clocked(table: TransitionTable, clock: ClockSpec, input_value: int,
                on_step: StepObserver | None = None) -> RunResult:
    """Execution under a polynomial clock; always terminates.

    If the machine cannot halt within bound(x) applied steps the result is
    interrupted with output 0 and steps equal to the bound.  Halting at
    exactly the bound counts as a normal halt.
    """
    bound = clock.bound(input_value)
    halted, steps, tape = _simulate(table, input_value, bound, on_step)
    if halted:
        return RunResult(output=_read_output(tape), steps=steps)
    return RunResult(output=0, steps=bound, interrupted=True)


# --- Goedel numbering ------------------------------------------------------
#
# A machine is the flat field sequence [q, s, next, write, move, q, s, ...]
# of its transitions sorted by (q, s), with next = 0 meaning HALT and
# next = k + 1 meaning state k, and move 0 = L, 1 = R.  The sequence is
# numbered through a bijective base-3 digit string: each field contributes
# its dyadic string followed by a terminating 2 digit.  This keeps the
# Goedel number's size linear in the table size (a nested-pair sequence
# code doubles in bit length per field and cannot represent realistic
# tables).  Numbers that do not parse (no trailing separator, field count
# not a multiple of 5, a field out of range, or a duplicate (q, s) key)
# decode to NULL_MACHINE, so decoding is total on the naturals and every
# table has a preimage.

_TRITS = "012"


def _from_trits(digits: str) -> int:
    n = 0
    for d in digits:
        n = 3 * n + _TRITS.index(d) + 1
    return n


def _to_trits(n: int) -> str:
    digits = []
    while n > 0:
        n, r = divmod(n - 1, 3)
        digits.append(_TRITS[r])
    return "".join(reversed(digits))


def encode_machine(table: TransitionTable) -> int:
    parts: list[str] = []
    for (q, s), t in sorted(table.transitions.items()):
        nxt = 0 if t.next_state == HALT else t.next_state + 1
        for field in (q, s, nxt, t.write, 0 if t.move == MOVE_L else 1):
            parts.append(to_dyadic(field))
            parts.append("2")
    return _from_trits("".join(parts))


def decode_machine(m: int) -> TransitionTable:
    digits = _to_trits(m)
    if not digits:
        flat: list[int] = []
    else:
        fields = digits.split("2")
        if fields[-1] != "":
            return NULL_MACHINE
        flat = [from_dyadic(f) for f in fields[:-1]]
    if len(flat) % 5 != 0:
        return NULL_MACHINE
    transitions: dict[tuple[int, int], Transition] = {}
    max_state = 0
    for i in range(0, len(flat), 5):
        q, s, nxt, write, move = flat[i:i + 5]
        if s > 2 or write > 2 or move > 1 or (q, s) in transitions:
            return NULL_MACHINE
        next_state = HALT if nxt == 0 else nxt - 1
        transitions[(q, s)] = Transition(next_state, write, MOVE_L if move == 0 else MOVE_R)
        max_state = max(max_state, q, next_state)
    return TransitionTable(state_count=max_state + 1, transitions=transitions)


# --- Text format -----------------------------------------------------------
#
#   states N
#   q sym -> q' sym' M
#
# with sym in {0, 1, _}, M in {L, R}, and HALT allowed as q'.

_SYMBOL_CHARS = {"0": 0, "1": 1, "_": BLANK}
_CHAR_SYMBOLS = {v: k for k, v in _SYMBOL_CHARS.items()}


class MachineFormatError(ValueError):
    pass


def parse_machine_file(text: str) -> TransitionTable:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("states"):
        raise MachineFormatError("first line must be 'states N'")
    try:
        state_count = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise MachineFormatError("first line must be 'states N'") from None
    transitions: dict[tuple[int, int], Transition] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 6 or parts[2] != "->":
            raise MachineFormatError(f"bad transition line: {ln!r}")
        q_raw, sym_raw, _, nq_raw, wsym_raw, move = parts
        if sym_raw not in _SYMBOL_CHARS or wsym_raw not in _SYMBOL_CHARS:
            raise MachineFormatError(f"bad symbol in line: {ln!r}")
        if move not in (MOVE_L, MOVE_R):
            raise MachineFormatError(f"bad move in line: {ln!r}")
        try:
            q = int(q_raw)
            nq = HALT if nq_raw == "HALT" else int(nq_raw)
        except ValueError:
            raise MachineFormatError(f"bad state in line: {ln!r}") from None
        key = (q, _SYMBOL_CHARS[sym_raw])
        if key in transitions:
            raise MachineFormatError(f"duplicate transition for {key}")
        transitions[key] = Transition(nq, _SYMBOL_CHARS[wsym_raw], move)
    try:
        return TransitionTable(state_count=state_count, transitions=transitions)
    except ValueError as e:
        raise MachineFormatError(str(e)) from None


def format_machine_file(table: TransitionTable) -> str:
    lines = [f"states {table.state_count}"]
    for (q, s), t in sorted(table.transitions.items()):
        nq = "HALT" if t.next_state == HALT else str(t.next_state)
        lines.append(f"{q} {_CHAR_SYMBOLS[s]} -> {nq} {_CHAR_SYMBOLS[t.write]} {t.move}")
    return "\n".join(lines) + "\n"
