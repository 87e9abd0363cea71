"""Two-counter Minsky machines compiled into quantum automata.

Counter value n is stored as ``G^n|0>`` on a qubit, where ``G`` fixes
``|+>`` and multiplies ``|->`` by ``(3+4i)/5``; since that phase is not a
root of unity, ``G^n|0> = |0>`` only for n = 0.  Instruction labels live in
``H_2L = span{|l>, |l^>}`` and each action moves the current label forward
while sending every other label into the hatted half, so any action that
does not match the machine's own step lands in a subspace the target
formula ``V & ~W`` detects.  Tensor order is (a, b, label), row-major.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .arith import ONE, ZERO, GaussianRational
from .automaton import QuantumAutomaton
from .linalg import (
    Subspace,
    basis_vector,
    contains,
    coordinate_space,
    identity_matrix,
    kron,
    subspace_sum,
    validate_scaled_unitary,
)

log = logging.getLogger(__name__)

COUNTERS = ("a", "b")

# G in the computational basis: (|+><+| + e|-><-|) with e = (3+4i)/5
G_MATRIX = (
    (GaussianRational("4/5", "2/5"), GaussianRational("1/5", "-2/5")),
    (GaussianRational("1/5", "-2/5"), GaussianRational("4/5", "2/5")),
)
G_PHASE = GaussianRational("3/5", "4/5")


class MinskyError(ValueError):
    pass


# source-level instructions


@dataclass(frozen=True)
class Inc:
    counter: str
    next: str


@dataclass(frozen=True)
class TestDec:
    counter: str
    zero: str
    nonzero: str


@dataclass(frozen=True)
class Halt:
    pass


# normalized instructions


@dataclass(frozen=True)
class Test:
    counter: str
    zero: str  # the l' label
    nonzero: str  # the l'' label


@dataclass(frozen=True)
class Goto:
    next: str


@dataclass(frozen=True)
class Dec:
    counter: str
    next: str


@dataclass(frozen=True)
class MinskyProgram:
    instructions: tuple  # (label, Inc | TestDec | Halt), first label starts
    init_a: int = 0
    init_b: int = 0


_LABEL = r"[A-Za-z_][A-Za-z0-9_]*"
_INC = re.compile(rf"^({_LABEL})\s*:\s*inc\s+(\S+)\s+goto\s+({_LABEL})$")
_TDZ = re.compile(rf"^({_LABEL})\s*:\s*tdz\s+(\S+)\s+goto\s+({_LABEL})\s+else\s+({_LABEL})$")
_HALT = re.compile(rf"^({_LABEL})\s*:\s*halt$")
_INIT = re.compile(r"^init\s+(\S+)\s+(\d+)$")


def _counter(c: str, lineno: int) -> str:
    if c not in COUNTERS:
        raise MinskyError(f"line {lineno}: counter {c!r} is not 'a' or 'b'")
    return c


def parse(text: str) -> MinskyProgram:
    instructions = []
    init = {"a": 0, "b": 0}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _INIT.match(line):
            init[_counter(m.group(1), lineno)] = int(m.group(2))
            continue
        if m := _INC.match(line):
            label, ins = m.group(1), Inc(_counter(m.group(2), lineno), m.group(3))
        elif m := _TDZ.match(line):
            label = m.group(1)
            ins = TestDec(_counter(m.group(2), lineno), m.group(3), m.group(4))
        elif m := _HALT.match(line):
            label, ins = m.group(1), Halt()
        else:
            raise MinskyError(f"line {lineno}: cannot parse {raw.strip()!r}")
        if label in seen:
            raise MinskyError(f"line {lineno}: duplicate label {label!r}")
        seen.add(label)
        instructions.append((label, ins))

    halts = [label for label, ins in instructions if isinstance(ins, Halt)]
    if not halts:
        raise MinskyError("program has no halt instruction")
    if len(halts) > 1:
        raise MinskyError(f"program has {len(halts)} halt instructions")
    if not isinstance(instructions[-1][1], Halt):
        raise MinskyError("the halt instruction must be the last one")
    for label, ins in instructions:
        targets = {Inc: ("next",), TestDec: ("zero", "nonzero"), Halt: ()}[type(ins)]
        for t in targets:
            if getattr(ins, t) not in seen:
                raise MinskyError(f"{label}: unknown label {getattr(ins, t)!r}")
    return MinskyProgram(tuple(instructions), init["a"], init["b"])


LABEL_CLASSES = ("L1a", "L1b", "L2a", "L2b", "L2a'", "L2b'", "L2a''", "L2b''")


@dataclass(frozen=True)
class NormalizedProgram:
    labels: tuple  # start label first, halt label last
    table: dict  # label -> Inc | Test | Goto | Dec
    classes: dict  # class name -> tuple of labels
    halt: str

    @property
    def start(self) -> str:
        return self.labels[0]

    def __len__(self):
        return len(self.labels)


def normalize(prog: MinskyProgram) -> NormalizedProgram:
    """Zero the initial counters, split tests, turn halt into a self-loop."""
    labels = []
    table = {}
    classes = {name: [] for name in LABEL_CLASSES}
    first = prog.instructions[0][0]

    pre = [("a", k) for k in range(prog.init_a)] + [("b", k) for k in range(prog.init_b)]
    pre_labels = [f"+{c}{k + 1}" for c, k in pre]
    for (c, _), label, nxt in zip(pre, pre_labels, pre_labels[1:] + [first]):
        labels.append(label)
        table[label] = Inc(c, nxt)
        classes[f"L1{c}"].append(label)

    halt = None
    for label, ins in prog.instructions:
        labels.append(label)
        if isinstance(ins, Inc):
            table[label] = ins
            classes[f"L1{ins.counter}"].append(label)
        elif isinstance(ins, TestDec):
            c = ins.counter
            zl, nl = f"{label}'", f"{label}''"
            table[label] = Test(c, zl, nl)
            table[zl] = Goto(ins.zero)
            table[nl] = Dec(c, ins.nonzero)
            labels += [zl, nl]
            classes[f"L2{c}"].append(label)
            classes[f"L2{c}'"].append(zl)
            classes[f"L2{c}''"].append(nl)
        else:
            halt = label
            table[label] = Goto(label)
    # halt is last in the source, so it is last here too
    return NormalizedProgram(
        tuple(labels), table, {k: tuple(v) for k, v in classes.items()}, halt
    )


# classical semantics


@dataclass(frozen=True)
class ClassicalRun:
    trace: tuple  # (a, b, label) per step
    halted: bool
    halt_step: Optional[int]


def step(p: NormalizedProgram, a: int, b: int, x: str):
    ins = p.table[x]
    if isinstance(ins, Inc):
        return (a + 1, b, ins.next) if ins.counter == "a" else (a, b + 1, ins.next)
    if isinstance(ins, Test):
        c = a if ins.counter == "a" else b
        return (a, b, ins.zero if c == 0 else ins.nonzero)
    if isinstance(ins, Dec):
        if ins.counter == "a":
            assert a > 0
            return (a - 1, b, ins.next)
        assert b > 0
        return (a, b - 1, ins.next)
    return (a, b, ins.next)


def run_classical(p: NormalizedProgram, max_steps: int) -> ClassicalRun:
    state = (0, 0, p.start)
    trace = [state]
    for i in range(max_steps + 1):
        if state[2] == p.halt:
            return ClassicalRun(tuple(trace), True, i)
        if i == max_steps:
            break
        state = step(p, *state)
        trace.append(state)
    return ClassicalRun(tuple(trace), False, None)


# quantum encoding


def label_permutation(n: int, x: int, y: int) -> tuple:
    """O_xy on H_2L as a permutation: position k -> perm[k].

    Positions 0..n-1 are labels, n..2n-1 their hats.  |x> -> |y>, other
    labels go to their hats, ^y -> ^x, other hats back to plain labels.
    For x == y this fixes |x> and |^x> and swaps every other pair.
    """
    perm = [0] * (2 * n)
    for l in range(n):
        perm[l] = y if l == x else n + l
        perm[n + l] = n + x if l == y else l
    assert sorted(perm) == list(range(2 * n))
    return tuple(perm)


def permutation_matrix(perm) -> tuple:
    m = len(perm)
    rows = [[ZERO] * m for _ in range(m)]
    for src, dst in enumerate(perm):
        rows[dst][src] = ONE
    return tuple(tuple(r) for r in rows)


def counter_operator(counter: Optional[str], e: int) -> tuple:
    """O_c^e on H_a (x) H_b."""
    i2 = identity_matrix(2)
    if counter is None or e == 0:
        return identity_matrix(4)
    g = G_MATRIX if e > 0 else tuple(tuple(G_MATRIX[j][i].conj() for j in range(2)) for i in range(2))
    return kron(g, i2) if counter == "a" else kron(i2, g)


def test_action(label: str, branch: int) -> str:
    return f"{label}.{branch}"


@dataclass(frozen=True)
class Encoding:
    program: NormalizedProgram
    automaton: QuantumAutomaton
    V: Subspace
    W: Subspace
    V0: Subspace
    parts: dict  # named pieces of V and W
    label_index: dict  # label -> position in H_2L (hat: + len(L))
    action_source: dict  # action -> (label, branch or None)
    label_perms: dict = field(compare=False, default_factory=dict)  # action -> O_xy permutation

    @property
    def n_labels(self) -> int:
        return len(self.program.labels)

    @property
    def dim(self) -> int:
        return self.automaton.ambient_dim

    def index(self, ca: int, cb: int, pos: int) -> int:
        return (ca * 2 + cb) * 2 * self.n_labels + pos

    def matched_action(self, a: int, b: int, label: str) -> str:
        ins = self.program.table[label]
        if isinstance(ins, Test):
            c = a if ins.counter == "a" else b
            return test_action(label, 0 if c == 0 else 1)
        return label


def _label_space(d: int, n: int, a_bits, b_bits, positions) -> Subspace:
    return coordinate_space(
        d, ((ca * 2 + cb) * 2 * n + p for ca in a_bits for cb in b_bits for p in positions)
    )


def encode(p: NormalizedProgram) -> Encoding:
    n = len(p.labels)
    d = 8 * n
    idx = {label: k for k, label in enumerate(p.labels)}
    actions = {}
    source = {}
    perms = {}

    def add(name, label, branch, counter, e, target):
        perm = label_permutation(n, idx[label], idx[target])
        mat = kron(counter_operator(counter, e), permutation_matrix(perm))
        actions[name] = validate_scaled_unitary(mat, 1)
        source[name] = (label, branch)
        perms[name] = perm

    for label in p.labels:
        ins = p.table[label]
        if isinstance(ins, Test):
            add(test_action(label, 0), label, 0, None, 0, ins.zero)
            add(test_action(label, 1), label, 1, None, 0, ins.nonzero)
        elif isinstance(ins, Inc):
            add(label, label, None, ins.counter, 1, ins.next)
        elif isinstance(ins, Dec):
            add(label, label, None, ins.counter, -1, ins.next)
        else:
            add(label, label, None, None, 0, ins.next)

    start = basis_vector(d, idx[p.start])  # |0>|0>|l0>
    automaton = QuantumAutomaton(d, actions, coordinate_space(d, [idx[p.start]]))
    assert contains(automaton.initial, start)

    both, zero = (0, 1), (0,)
    pos = lambda cls: [idx[l] for l in p.classes[cls]]
    parts = {
        "V0": _label_space(d, n, both, both, [idx[p.halt]]),
        "Vhat": _label_space(d, n, both, both, range(n, 2 * n)),
        "V1a": _label_space(d, n, both, both, pos("L2a'")),
        "V1b": _label_space(d, n, both, both, pos("L2b'")),
        "V2a": _label_space(d, n, zero, both, pos("L2a''")),
        "V2b": _label_space(d, n, both, zero, pos("L2b''")),
        "Wa": _label_space(d, n, zero, both, pos("L2a'")),
        "Wb": _label_space(d, n, both, zero, pos("L2b'")),
    }
    v = parts["V0"]
    for key in ("Vhat", "V1a", "V1b", "V2a", "V2b"):
        v = subspace_sum(v, parts[key])
    w = subspace_sum(parts["Wa"], parts["Wb"])
    enc = Encoding(p, automaton, v, w, parts["V0"], parts, idx, source, perms)
    check_encoding(enc)
    return enc


def check_encoding(e: Encoding) -> None:
    """Every operator sends every non-source label into the hatted half."""
    n = e.n_labels
    for name, op in e.automaton.actions.items():
        assert op.scale == 1
        label, _ = e.action_source[name]
        x = e.label_index[label]
        perm = e.label_perms[name]
        for z in range(n):
            if z == x:
                continue
            assert perm[z] >= n, f"{name}: label {e.program.labels[z]} stays unhatted"
            out = op.apply(basis_vector(e.dim, e.index(0, 0, z)))
            hot = [k for k, c in enumerate(out) if c]
            assert all(k % (2 * n) >= n for k in hot)


# the quantum run sigma_0


_COUNTER_CACHE = [(ONE, ZERO)]


def counter_state(k: int) -> tuple:
    """G^k |0>, memoized."""
    while len(_COUNTER_CACHE) <= k:
        v = _COUNTER_CACHE[-1]
        _COUNTER_CACHE.append(
            (
                G_MATRIX[0][0] * v[0] + G_MATRIX[0][1] * v[1],
                G_MATRIX[1][0] * v[0] + G_MATRIX[1][1] * v[1],
            )
        )
    return _COUNTER_CACHE[k]


def _five_adic(n: int) -> int:
    k = 0
    while n % 5 == 0:
        n //= 5
        k += 1
    return k


def decode_counter(phi) -> int:
    """Recover k from ``phi = G^k|0>``; the phase ``e^k`` has denominator exactly 5^k."""
    phase = phi[0] - phi[1]
    # (3+4i)^k is not divisible by 5 in Z[i], so one part keeps the full 5^k
    k = max(_five_adic(phase.re.denominator), _five_adic(phase.im.denominator))
    if phase != G_PHASE ** k or phi[0] + phi[1] != 1:
        raise ValueError("not a counter state")
    return k


class DecodeError(ValueError):
    pass


def decode(e: Encoding, state) -> tuple:
    """(a, b, label) of a product state ``G^a|0> G^b|0> |label>``."""
    n = e.n_labels
    hot = {k % (2 * n) for k, c in enumerate(state) if c}
    if len(hot) != 1:
        raise DecodeError(f"state spreads over label positions {sorted(hot)}")
    (pos,) = hot
    if pos >= n:
        raise DecodeError("state sits on a hatted label")
    s = [[state[e.index(i, j, pos)] for j in (0, 1)] for i in (0, 1)]
    phi_a = (s[0][0] + s[0][1], s[1][0] + s[1][1])
    phi_b = (s[0][0] + s[1][0], s[0][1] + s[1][1])
    for i in (0, 1):
        for j in (0, 1):
            if phi_a[i] * phi_b[j] != s[i][j]:
                raise DecodeError("state is not a product of counter states")
    try:
        a, b = decode_counter(phi_a), decode_counter(phi_b)
    except ValueError as exc:
        raise DecodeError(str(exc)) from None
    return a, b, e.program.labels[pos]


def initial_state(e: Encoding) -> tuple:
    return basis_vector(e.dim, e.index(0, 0, e.label_index[e.program.start]))


@dataclass(frozen=True)
class Sigma0Run:
    states: tuple
    word: tuple  # word[i] drives states[i] -> states[i+1]
    decoded: tuple  # (a, b, label) per state


def _is_ket0(phi) -> bool:
    return phi[0] == 1 and not phi[1]


def run_sigma0(e: Encoding, max_steps: int) -> Sigma0Run:
    """Drive the automaton with the matched action at every step."""
    state = initial_state(e)
    states, word, decoded = [state], [], []
    for i in range(max_steps + 1):
        a, b, label = decode(e, state)
        # G^k|0> = |0> exactly when k = 0
        assert _is_ket0(counter_state(a)) == (a == 0)
        assert _is_ket0(counter_state(b)) == (b == 0)
        decoded.append((a, b, label))
        if i == max_steps:
            break
        name = e.matched_action(a, b, label)
        state = e.automaton.actions[name].apply(state)
        word.append(name)
        states.append(state)
    return Sigma0Run(tuple(states), tuple(word), tuple(decoded))


def in_target(e: Encoding, state) -> bool:
    """state in V and not in W."""
    if not any(state):
        log.warning("zero state met while checking V & ~W")
        return False
    return contains(e.V, state) and not contains(e.W, state)


def check_fv_not_w(e: Encoding, states: Iterable, bound: Optional[int] = None) -> Optional[int]:
    """First index whose state satisfies V & ~W, or None."""
    for i, s in enumerate(states):
        if bound is not None and i > bound:
            break
        if in_target(e, s):
            return i
    return None


def first_in(space: Subspace, states: Iterable) -> Optional[int]:
    for i, s in enumerate(states):
        if contains(space, s):
            return i
    return None


def deviations(e: Encoding, run: Sigma0Run, upto: int):
    """(k, action, state) for every action at step k < upto other than the matched one."""
    for k in range(upto):
        for name, op in e.automaton.actions.items():
            if name == run.word[k]:
                continue
            nxt = op.apply(run.states[k])
            assert nxt != run.states[k + 1], f"{name} at step {k} reproduces the matched step"
            yield k, name, nxt


@dataclass(frozen=True)
class DemoReport:
    labels: int
    dim: int
    actions: int
    halted: bool
    halt_step: Optional[int]
    first_v0: Optional[int]
    first_target: Optional[int]
    deviations_checked: int
    deviations_failed: int
    lockstep_ok: bool


def demo(p: NormalizedProgram, bound: int) -> DemoReport:
    e = encode(p)
    classical = run_classical(p, bound)
    steps = classical.halt_step if classical.halted else bound
    run = run_sigma0(e, steps)
    lockstep = run.decoded == classical.trace[: len(run.decoded)]
    checked = failed = 0
    for k, _, s in deviations(e, run, steps):
        checked += 1
        if not in_target(e, s):
            failed += 1
    return DemoReport(
        labels=len(p),
        dim=e.dim,
        actions=len(e.automaton.actions),
        halted=classical.halted,
        halt_step=classical.halt_step,
        first_v0=first_in(e.V0, run.states),
        first_target=check_fv_not_w(e, run.states, bound),
        deviations_checked=checked,
        deviations_failed=failed,
        lockstep_ok=lockstep,
    )
