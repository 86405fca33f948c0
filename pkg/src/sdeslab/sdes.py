"""Bit-exact simplified DES (S-DES): a 10-bit-key, 8-bit-block teaching cipher.

Bit sequences are Python strings of '0'/'1' characters; index 0 is the
leftmost (most significant) character. Every permutation table is stored
0-indexed with ``output[i] = input[table[i]]`` semantics.

Two S-box presets are shipped. They differ in a single entry (row 3,
column 2 of S0): ``canonical`` is the textbook definition, ``paper`` is a
variant with that entry set to 1 that appears in some presentations of the
cipher. ``paper`` is the default; experiment outputs record which preset
was used.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path

import numpy as np

KEY_BITS = 10
BLOCK_BITS = 8
KEY_SPACE = 1 << KEY_BITS
BLOCK_SPACE = 1 << BLOCK_BITS


def check_bits(bits: str, width: int, what: str = "bit string") -> str:
    """Validate a '0'/'1' string of the given width and return it."""
    if not isinstance(bits, str) or len(bits) != width or any(c not in "01" for c in bits):
        raise ValueError(f"{what} must be a {width}-character string of '0'/'1', got {bits!r}")
    return bits


def xor_bits(a: str, b: str) -> str:
    if len(a) != len(b):
        raise ValueError(f"xor operands differ in width: {len(a)} vs {len(b)}")
    return "".join("1" if x != y else "0" for x, y in zip(a, b))


@dataclass(frozen=True)
class Permutation:
    """Rearrangement of a fixed-width sequence; expansions may repeat indices.

    ``targets[i]`` is the source index copied to output position i. The
    output width is ``len(targets)`` and may differ from ``source_width``.
    """

    targets: tuple[int, ...]
    source_width: int
    expansion: bool = False

    def __post_init__(self):
        for t in self.targets:
            if not 0 <= t < self.source_width:
                raise ValueError(f"permutation index {t} out of range for width {self.source_width}")
        if not self.expansion and len(set(self.targets)) != len(self.targets):
            raise ValueError(f"permutation repeats a source index: {self.targets}")

    def __call__(self, seq):
        if len(seq) != self.source_width:
            raise ValueError(f"permutation expects width {self.source_width}, got {len(seq)}")
        picked = [seq[t] for t in self.targets]
        return "".join(picked) if isinstance(seq, str) else tuple(picked)

    def inverse(self) -> "Permutation":
        """Inverse of a square bijection."""
        if self.expansion or len(self.targets) != self.source_width:
            raise ValueError("only square permutations are invertible")
        inv = [0] * self.source_width
        for i, t in enumerate(self.targets):
            inv[t] = i
        return Permutation(tuple(inv), self.source_width)


# Block pipeline permutations.
IP = Permutation((1, 5, 2, 0, 3, 7, 4, 6), 8)
IP_INV = Permutation((3, 0, 2, 4, 6, 1, 7, 5), 8)
EXPANSION = Permutation((3, 0, 1, 2, 1, 2, 3, 0), 4, expansion=True)
P4 = Permutation((1, 3, 2, 0), 4)
SW = Permutation((4, 5, 6, 7, 0, 1, 2, 3), 8)

# Key-schedule permutations (P8 selects 8 of the 10 shifted key bits).
P10 = Permutation((2, 4, 1, 6, 3, 9, 0, 8, 7, 5), 10)
P8 = Permutation((5, 2, 6, 3, 7, 4, 9, 8), 10)


@dataclass(frozen=True)
class SBox:
    """4x4 substitution table; rows/columns are addressed by 2-bit values."""

    rows: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        if len(self.rows) != 4 or any(len(r) != 4 for r in self.rows):
            raise ValueError("s-box must be a 4x4 table")
        if any(v not in (0, 1, 2, 3) for r in self.rows for v in r):
            raise ValueError("s-box entries must be integers in 0..3")

    def lookup(self, bits: str) -> str:
        """Map 4 input bits to 2 output bits (row from bits 1&4, column from bits 2&3)."""
        check_bits(bits, 4, "s-box input")
        row = int(bits[0] + bits[3], 2)
        col = int(bits[1] + bits[2], 2)
        return format(self.rows[row][col], "02b")


@dataclass(frozen=True)
class SBoxPair:
    name: str
    s0: SBox
    s1: SBox


_S1_ROWS = ((0, 1, 2, 3), (2, 0, 1, 3), (3, 0, 1, 0), (2, 1, 0, 3))

PAPER = SBoxPair("paper", SBox(((1, 0, 3, 2), (3, 2, 1, 0), (0, 2, 1, 3), (3, 1, 1, 2))), SBox(_S1_ROWS))
CANONICAL = SBoxPair("canonical", SBox(((1, 0, 3, 2), (3, 2, 1, 0), (0, 2, 1, 3), (3, 1, 3, 2))), SBox(_S1_ROWS))

PRESETS = {"paper": PAPER, "canonical": CANONICAL}
DEFAULT_SBOXES = PAPER


def get_preset(name: str) -> SBoxPair:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown s-box preset {name!r}; choose from {sorted(PRESETS)}") from None


def load_sbox_file(path) -> SBoxPair:
    """Read an S-box override file: 8 lines of 4 integers in 0..3 (S0 then S1).

    Blank lines and '#' comments are ignored.
    """
    path = Path(path)
    grids: list[list[int]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 values, got {len(tokens)}")
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-integer s-box entry") from None
        if any(v not in (0, 1, 2, 3) for v in values):
            raise ValueError(f"{path}:{lineno}: s-box entries must be in 0..3")
        grids.append(values)
    if len(grids) != 8:
        raise ValueError(f"{path}: expected 8 data lines (4 for S0, 4 for S1), got {len(grids)}")
    s0 = SBox(tuple(tuple(r) for r in grids[:4]))
    s1 = SBox(tuple(tuple(r) for r in grids[4:]))
    return SBoxPair(path.stem, s0, s1)


def left_rotate(bits: str, n: int) -> str:
    n %= len(bits)
    return bits[n:] + bits[:n]


def key_schedule(key: str) -> tuple[str, str]:
    """Derive the two 8-bit round sub-keys from a 10-bit key.

    P10, then a circular left shift of 1 on each 5-bit half selects K1 via
    P8; two further shifts per half select K2 via the same P8.
    """
    check_bits(key, KEY_BITS, "key")
    shuffled = P10(key)
    left, right = left_rotate(shuffled[:5], 1), left_rotate(shuffled[5:], 1)
    k1 = P8(left + right)
    left, right = left_rotate(left, 2), left_rotate(right, 2)
    k2 = P8(left + right)
    return k1, k2


def initial_permutation(block: str) -> str:
    return IP(check_bits(block, BLOCK_BITS, "block"))


def final_permutation(block: str) -> str:
    return IP_INV(check_bits(block, BLOCK_BITS, "block"))


def expand_permute(nibble: str) -> str:
    """Expand a 4-bit half to 8 bits before sub-key mixing."""
    return EXPANSION(check_bits(nibble, 4, "half-block"))


def sbox_lookup(box: SBox, bits: str) -> str:
    return box.lookup(bits)


def round_function(nibble: str, subkey: str, sboxes: SBoxPair = DEFAULT_SBOXES) -> str:
    """The 4-bit-to-4-bit mapping F: expand, mix sub-key, substitute, permute."""
    check_bits(subkey, 8, "sub-key")
    mixed = xor_bits(expand_permute(nibble), subkey)
    joined = sboxes.s0.lookup(mixed[:4]) + sboxes.s1.lookup(mixed[4:])
    return P4(joined)


def f_k(block: str, subkey: str, sboxes: SBoxPair = DEFAULT_SBOXES) -> str:
    """Feistel step: xor the left half with F(right half, sub-key); right half unchanged."""
    check_bits(block, BLOCK_BITS, "block")
    left, right = block[:4], block[4:]
    return xor_bits(left, round_function(right, subkey, sboxes)) + right


def switch(block: str) -> str:
    """Swap the two 4-bit halves."""
    return SW(check_bits(block, BLOCK_BITS, "block"))


def encrypt_block(block: str, key: str, sboxes: SBoxPair = DEFAULT_SBOXES) -> str:
    k1, k2 = key_schedule(key)
    state = initial_permutation(block)
    state = f_k(state, k1, sboxes)
    state = switch(state)
    state = f_k(state, k2, sboxes)
    return IP_INV(state)


def decrypt_block(block: str, key: str, sboxes: SBoxPair = DEFAULT_SBOXES) -> str:
    # Same pipeline with the sub-keys applied in reverse order.
    k1, k2 = key_schedule(key)
    state = initial_permutation(block)
    state = f_k(state, k2, sboxes)
    state = switch(state)
    state = f_k(state, k1, sboxes)
    return IP_INV(state)


# ---------------------------------------------------------------------------
# Bulk path: per-key 256-byte translation tables, vectorised over the whole
# key space. Byte streams are encrypted codebook-style, one byte per block.
# ---------------------------------------------------------------------------


def _all_subkeys() -> tuple[np.ndarray, np.ndarray]:
    """(K1, K2) bit matrices of shape (1024, 8) for every key in numeric order."""
    keys = ((np.arange(KEY_SPACE)[:, None] >> np.arange(KEY_BITS - 1, -1, -1)) & 1).astype(np.uint8)
    shuffled = keys[:, P10.targets]
    left = np.roll(shuffled[:, :5], -1, axis=1)
    right = np.roll(shuffled[:, 5:], -1, axis=1)
    one_shift = np.concatenate([left, right], axis=1)
    k1 = one_shift[:, P8.targets]
    three_shift = np.concatenate(
        [np.roll(one_shift[:, :5], -2, axis=1), np.roll(one_shift[:, 5:], -2, axis=1)], axis=1
    )
    k2 = three_shift[:, P8.targets]
    return k1, k2


def _round_function_vec(halves: np.ndarray, subkeys: np.ndarray, sboxes: SBoxPair) -> np.ndarray:
    """F applied elementwise over broadcastable bit arrays (..., 4) and (..., 8)."""
    mixed = halves[..., EXPANSION.targets] ^ subkeys
    s0 = np.asarray(sboxes.s0.rows, dtype=np.uint8)
    s1 = np.asarray(sboxes.s1.rows, dtype=np.uint8)
    out0 = s0[mixed[..., 0] * 2 + mixed[..., 3], mixed[..., 1] * 2 + mixed[..., 2]]
    out1 = s1[mixed[..., 4] * 2 + mixed[..., 7], mixed[..., 5] * 2 + mixed[..., 6]]
    joined = np.stack([(out0 >> 1) & 1, out0 & 1, (out1 >> 1) & 1, out1 & 1], axis=-1)
    return joined[..., P4.targets]


def _build_tables(sboxes: SBoxPair, reverse_subkeys: bool) -> np.ndarray:
    k1, k2 = _all_subkeys()
    first, second = (k2, k1) if reverse_subkeys else (k1, k2)
    blocks = np.unpackbits(np.arange(BLOCK_SPACE, dtype=np.uint8)[:, None], axis=1)
    state = blocks[:, IP.targets]  # (256, 8)
    left, right = state[:, :4], state[:, 4:]
    left = left ^ _round_function_vec(right, first[:, None, :], sboxes)  # (1024, 256, 4)
    # switch, then the second round alters what is now the left half
    left, right = np.broadcast_to(right, left.shape), left
    left = left ^ _round_function_vec(right, second[:, None, :], sboxes)
    out = np.concatenate([left, right], axis=-1)[..., IP_INV.targets]
    return np.packbits(out.reshape(-1, 8), axis=1).reshape(KEY_SPACE, BLOCK_SPACE)


@functools.lru_cache(maxsize=8)
def encryption_tables(sboxes: SBoxPair = DEFAULT_SBOXES) -> np.ndarray:
    """(1024, 256) table: row k maps a plaintext byte to its ciphertext byte."""
    tables = _build_tables(sboxes, reverse_subkeys=False)
    tables.setflags(write=False)
    return tables


@functools.lru_cache(maxsize=8)
def decryption_tables(sboxes: SBoxPair = DEFAULT_SBOXES) -> np.ndarray:
    """(1024, 256) table: row k maps a ciphertext byte back to plaintext."""
    tables = _build_tables(sboxes, reverse_subkeys=True)
    tables.setflags(write=False)
    return tables


def encrypt_bytes(data: bytes, key: str, sboxes: SBoxPair = DEFAULT_SBOXES) -> bytes:
    """Encrypt a byte string, each byte as an independent block."""
    check_bits(key, KEY_BITS, "key")
    return bytes(data).translate(encryption_tables(sboxes)[int(key, 2)].tobytes())


def decrypt_bytes(data: bytes, key: str, sboxes: SBoxPair = DEFAULT_SBOXES) -> bytes:
    check_bits(key, KEY_BITS, "key")
    return bytes(data).translate(decryption_tables(sboxes)[int(key, 2)].tobytes())
