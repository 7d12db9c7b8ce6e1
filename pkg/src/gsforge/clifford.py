"""Single-qubit Clifford algebra and the stabilizer-tableau verification oracle.

A single-qubit Clifford is stored by its conjugation action: the signed Pauli
images of X and Z (global phase is never tracked).  There are exactly 24 such
actions; composition, inversion and a fixed decomposition into quarter/half
turn tokens are all table-driven.  The tableau tracks stabilizer generators
as X/Z bitmasks with sign bits; equality is decided on canonical signed
row-echelon form, so it compares generated groups, not generator lists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, _bits, local_complement

I, X, Y, Z = 0, 1, 2, 3
_LETTER_NAMES = "IXYZ"

# L1 * L2 = i^phase * L3 for single-qubit Paulis (cyclic products pick up +i)
_PAULI_MUL: dict[tuple[int, int], tuple[int, int]] = {}
for _p in (I, X, Y, Z):
    _PAULI_MUL[(I, _p)] = (_p, 0)
    _PAULI_MUL[(_p, I)] = (_p, 0)
    _PAULI_MUL[(_p, _p)] = (I, 0)
for _a, _b, _c in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
    _PAULI_MUL[(_a, _b)] = (_c, 1)
    _PAULI_MUL[(_b, _a)] = (_c, 3)


@dataclass(frozen=True)
class SingleQubitClifford:
    """Conjugation action U·P·U†: signed images of X and Z (sign is ±1)."""

    x_to: tuple[int, int]
    z_to: tuple[int, int]

    def __post_init__(self):
        (lx, sx), (lz, sz) = self.x_to, self.z_to
        if lx == I or lz == I or lx == lz or sx not in (1, -1) or sz not in (1, -1):
            raise ValueError(f"not a Clifford action: X->{self.x_to}, Z->{self.z_to}")

    @property
    def y_to(self) -> tuple[int, int]:
        # Y = i X Z, conjugation is multiplicative: g(Y) = i g(X) g(Z)
        (lx, sx), (lz, sz) = self.x_to, self.z_to
        letter, phase = _PAULI_MUL[(lx, lz)]
        phase = (phase + 1) % 4  # the leading i
        assert phase in (0, 2) and letter != I
        return (letter, sx * sz * (1 if phase == 0 else -1))

    def act(self, letter: int, sign: int = 1) -> tuple[int, int]:
        if letter == I:
            return (I, sign)
        image = (self.x_to, self.y_to, self.z_to)[letter - 1]
        return (image[0], image[1] * sign)

    def compose(self, earlier: "SingleQubitClifford") -> "SingleQubitClifford":
        """self∘earlier: the action of applying ``earlier`` first."""
        return SingleQubitClifford(self.act(*earlier.x_to), self.act(*earlier.z_to))

    def inverse(self) -> "SingleQubitClifford":
        images = {}
        for letter in (X, Y, Z):
            img_letter, img_sign = self.act(letter)
            images[img_letter] = (letter, img_sign)
        return SingleQubitClifford(images[X], images[Z])

    def is_identity(self) -> bool:
        return self.x_to == (X, 1) and self.z_to == (Z, 1)

    def __str__(self):
        def fmt(letter, sign):
            return ("-" if sign < 0 else "+") + _LETTER_NAMES[letter]

        return f"[X->{fmt(*self.x_to)}, Z->{fmt(*self.z_to)}]"


IDENTITY = SingleQubitClifford((X, 1), (Z, 1))

# Conjugation actions of the gate-string tokens.  exp(-iπ/4 σx) fixes X and
# sends Z to -Y; exp(+iπ/4 σz) fixes Z and sends X to -Y; sign flips with the
# exponent.  exp(±iπ/2 σz) are the same action (±iZ) modulo global phase.
TOKEN_ACTIONS: dict[str, SingleQubitClifford] = {
    "sqX+": SingleQubitClifford((X, 1), (Y, 1)),
    "sqX-": SingleQubitClifford((X, 1), (Y, -1)),
    "sqZ+": SingleQubitClifford((Y, -1), (Z, 1)),
    "sqZ-": SingleQubitClifford((Y, 1), (Z, 1)),
    "hZ+": SingleQubitClifford((X, -1), (Z, 1)),
    "hZ-": SingleQubitClifford((X, -1), (Z, 1)),
}

SQRT_X_NEG = TOKEN_ACTIONS["sqX-"]
SQRT_Z_POS = TOKEN_ACTIONS["sqZ+"]


def _build_tables():
    """Closure of the token generators: all 24 elements + shortest words."""
    order = ["sqX+", "sqX-", "sqZ+", "sqZ-", "hZ+"]  # hZ- acts identically
    words: dict[SingleQubitClifford, tuple[str, ...]] = {IDENTITY: ()}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for tok in order:
                # word tokens are a left-to-right matrix product: new token
                # is applied before the rest when appended on the right
                h = g.compose(TOKEN_ACTIONS[tok])
                if h not in words:
                    words[h] = words[g] + (tok,)
                    nxt.append(h)
        frontier = nxt
    return tuple(words), words


ALL_CLIFFORDS, _DECOMPOSITIONS = _build_tables()


def decompose(g: SingleQubitClifford) -> tuple[str, ...]:
    """Shortest token word (matrix product left to right) equal to g up to
    global phase; at most 3 tokens; empty for the identity."""
    return _DECOMPOSITIONS[g]


def compose_word(tokens) -> SingleQubitClifford:
    g = IDENTITY
    for tok in tokens:  # rightmost token acts first
        g = g.compose(TOKEN_ACTIONS[tok])
    return g


@dataclass(frozen=True)
class LocalUnitaryLayer:
    """One single-qubit Clifford per qubit, applied in a single time step."""

    gates: tuple[SingleQubitClifford, ...]

    @property
    def n(self) -> int:
        return len(self.gates)

    def is_identity(self) -> bool:
        return all(g.is_identity() for g in self.gates)

    @staticmethod
    def identity(n: int) -> "LocalUnitaryLayer":
        return LocalUnitaryLayer((IDENTITY,) * n)

    def compose(self, earlier: "LocalUnitaryLayer") -> "LocalUnitaryLayer":
        return LocalUnitaryLayer(
            tuple(g.compose(e) for g, e in zip(self.gates, earlier.gates))
        )


def lc_unitary(g: Graph, a: int) -> LocalUnitaryLayer:
    """The single-qubit layer realizing local complementation at ``a``:
    exp(-iπ/4 X) on a and exp(+iπ/4 Z) on every neighbor of a."""
    if not 0 <= a < g.n:
        raise ValueError(f"vertex {a} out of range for n={g.n}")
    gates = [IDENTITY] * g.n
    gates[a] = SQRT_X_NEG
    for b in _bits(g.adj[a]):
        gates[b] = SQRT_Z_POS
    return LocalUnitaryLayer(tuple(gates))


def compose_sequence(g: Graph, seq) -> LocalUnitaryLayer:
    """Collapse successive local complementations at ``seq`` (applied left to
    right, each evaluated on the current graph) into one layer per qubit."""
    layer = LocalUnitaryLayer.identity(g.n)
    cur = g
    for a in seq:
        layer = lc_unitary(cur, a).compose(layer)
        cur = local_complement(cur, a)
    return layer


# ---------------------------------------------------------------------------
# Stabilizer tableau
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerTableau:
    """n stabilizer generators: X/Z bitmasks plus a sign bit each.

    Row i is (-1)^signs[i] · prod_q L_q with the letter at qubit q read off
    the (x,z) bit pair: (1,0)=X, (0,1)=Z, (1,1)=Y.
    """

    n: int
    xs: tuple[int, ...]
    zs: tuple[int, ...]
    signs: tuple[int, ...]

    def validate(self) -> None:
        assert len(self.xs) == len(self.zs) == len(self.signs) == self.n
        for i in range(self.n):
            for j in range(i + 1, self.n):
                sym = (self.xs[i] & self.zs[j]).bit_count() \
                    + (self.zs[i] & self.xs[j]).bit_count()
                assert sym % 2 == 0, f"generators {i},{j} anticommute"
        vecs = [self.xs[i] | self.zs[i] << self.n for i in range(self.n)]
        pivots: dict[int, int] = {}
        rank = 0
        for v in vecs:
            while v:
                low = v & -v
                if low not in pivots:
                    pivots[low] = v
                    rank += 1
                    break
                v ^= pivots[low]
        assert rank == self.n, "generators dependent"


def graph_state_tableau(g: Graph) -> StabilizerTableau:
    """Generators K_a = X_a · Z_{N(a)}, all signs +."""
    return StabilizerTableau(
        g.n,
        tuple(1 << a for a in range(g.n)),
        tuple(g.adj),
        (0,) * g.n,
    )


def plus_state_tableau(n: int) -> StabilizerTableau:
    """|+...+> = H on every qubit of |0...0>; generators X_a."""
    return StabilizerTableau(n, tuple(1 << a for a in range(n)), (0,) * n, (0,) * n)


def apply_cz(t: StabilizerTableau, i: int, j: int) -> StabilizerTableau:
    if i == j or not (0 <= i < t.n and 0 <= j < t.n):
        raise ValueError(f"bad CZ qubits ({i},{j}) for n={t.n}")
    bi, bj = 1 << i, 1 << j
    xs, zs, signs = list(t.xs), list(t.zs), list(t.signs)
    for r in range(t.n):
        xi = xs[r] >> i & 1
        xj = xs[r] >> j & 1
        if xi or xj:
            zi = zs[r] >> i & 1
            zj = zs[r] >> j & 1
            signs[r] ^= xi & xj & (zi ^ zj)
            if xj:
                zs[r] ^= bi
            if xi:
                zs[r] ^= bj
    return StabilizerTableau(t.n, tuple(xs), tuple(zs), tuple(signs))


def apply_hadamard(t: StabilizerTableau, i: int) -> StabilizerTableau:
    if not 0 <= i < t.n:
        raise ValueError(f"bad qubit {i} for n={t.n}")
    bit = 1 << i
    xs, zs, signs = list(t.xs), list(t.zs), list(t.signs)
    for r in range(t.n):
        x = xs[r] & bit
        z = zs[r] & bit
        signs[r] ^= 1 if (x and z) else 0  # H sends Y to -Y
        xs[r] ^= x ^ z
        zs[r] ^= x ^ z
    return StabilizerTableau(t.n, tuple(xs), tuple(zs), tuple(signs))


def apply_single_clifford(t: StabilizerTableau, i: int, g: SingleQubitClifford) -> StabilizerTableau:
    if not 0 <= i < t.n:
        raise ValueError(f"bad qubit {i} for n={t.n}")
    bit = 1 << i
    images = (None, g.x_to, g.y_to, g.z_to)
    xs, zs, signs = list(t.xs), list(t.zs), list(t.signs)
    for r in range(t.n):
        letter = (xs[r] >> i & 1) | (zs[r] >> i & 1) << 1
        if letter == 0:
            continue
        new_letter, sign = images[(I, X, Z, Y)[letter]]
        xs[r] = (xs[r] & ~bit) | (bit if new_letter in (X, Y) else 0)
        zs[r] = (zs[r] & ~bit) | (bit if new_letter in (Y, Z) else 0)
        if sign < 0:
            signs[r] ^= 1
    return StabilizerTableau(t.n, tuple(xs), tuple(zs), tuple(signs))


def apply_layer(t: StabilizerTableau, layer: LocalUnitaryLayer) -> StabilizerTableau:
    for q, g in enumerate(layer.gates):
        if not g.is_identity():
            t = apply_single_clifford(t, q, g)
    return t


def _row_product(n, x1, z1, s1, x2, z2, s2):
    """Multiply two Pauli rows; the i-power must come out even."""
    phase = 2 * (s1 + s2)
    both = (x1 | z1) & (x2 | z2)
    for q in _bits(both):
        l1 = (I, X, Z, Y)[(x1 >> q & 1) | (z1 >> q & 1) << 1]
        l2 = (I, X, Z, Y)[(x2 >> q & 1) | (z2 >> q & 1) << 1]
        phase += _PAULI_MUL[(l1, l2)][1]
    phase %= 4
    assert phase % 2 == 0, "non-Hermitian row product"
    return x1 ^ x2, z1 ^ z2, phase // 2


def canonical_generators(t: StabilizerTableau) -> list[tuple[int, int, int]]:
    """Unique signed reduced echelon basis of the stabilizer group."""
    n = t.n
    rows = [(t.xs[i], t.zs[i], t.signs[i]) for i in range(n)]
    basis: list[tuple[int, int, int]] = []
    pivots: dict[int, int] = {}  # pivot bit -> basis index
    for x, z, s in rows:
        vec = x | z << n
        while vec:
            low = vec & -vec
            idx = pivots.get(low)
            if idx is None:
                pivots[low] = len(basis)
                basis.append((x, z, s))
                break
            bx, bz, bs = basis[idx]
            x, z, s = _row_product(n, x, z, s, bx, bz, bs)
            vec = x | z << n
    # back-eliminate for full reduction
    for low in sorted(pivots, reverse=True):
        idx = pivots[low]
        bx, bz, bs = basis[idx]
        for low2, idx2 in pivots.items():
            if idx2 != idx:
                x, z, s = basis[idx2]
                if (x | z << n) & low:
                    basis[idx2] = _row_product(n, x, z, s, bx, bz, bs)
    basis.sort(key=lambda row: row[0] | row[1] << n)
    return basis


def tableaux_equal(t1: StabilizerTableau, t2: StabilizerTableau) -> bool:
    """True iff the generated signed stabilizer groups coincide."""
    if t1.n != t2.n:
        raise ValueError("qubit counts differ")
    return canonical_generators(t1) == canonical_generators(t2)
