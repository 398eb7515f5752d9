"""Hand-built machines shared across test modules."""

import random

from bgslab.machine import BLANK, HALT, MOVE_L, MOVE_R, Transition, TransitionTable

# scans right erasing the input block, halts at the first blank: output 0
ERASER = TransitionTable(1, {
    (0, 0): Transition(0, BLANK, MOVE_R),
    (0, 1): Transition(0, BLANK, MOVE_R),
})

# moves right forever, never halts
LOOPER = TransitionTable(1, {
    (0, 0): Transition(0, 0, MOVE_R),
    (0, 1): Transition(0, 1, MOVE_R),
    (0, BLANK): Transition(0, BLANK, MOVE_R),
})

# scans right over the input, applies an explicit HALT transition on the
# first blank (so blank-hitting costs one counted step)
SCANNER = TransitionTable(1, {
    (0, 0): Transition(0, 0, MOVE_R),
    (0, 1): Transition(0, 1, MOVE_R),
    (0, BLANK): Transition(HALT, BLANK, MOVE_R),
})

# writes the two-bit block "11" over the input's first cells, erases the
# rest: outputs 6 on any input of dyadic length >= 2
WRITE_11_THEN_ERASE = TransitionTable(3, {
    (0, 0): Transition(1, 1, MOVE_R),
    (0, 1): Transition(1, 1, MOVE_R),
    (1, 0): Transition(2, 1, MOVE_R),
    (1, 1): Transition(2, 1, MOVE_R),
    (2, 0): Transition(2, BLANK, MOVE_R),
    (2, 1): Transition(2, BLANK, MOVE_R),
})

# on empty input writes a single 1 at the origin: outputs 2 on input 0
WRITE_ONE_AT_ORIGIN = TransitionTable(1, {
    (0, BLANK): Transition(HALT, 1, MOVE_R),
})


def random_table(rng: random.Random, max_states: int = 4) -> TransitionTable:
    """A random deterministic table; entries are present with probability 3/4."""
    states = rng.randint(1, max_states)
    transitions = {}
    for q in range(states):
        for sym in (0, 1, BLANK):
            if rng.random() < 0.75:
                nxt = rng.choice([HALT] + list(range(states)))
                transitions[(q, sym)] = Transition(
                    nxt, rng.choice((0, 1, BLANK)), rng.choice((MOVE_L, MOVE_R)))
    return TransitionTable(states, transitions)
