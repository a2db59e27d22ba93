"""End-to-end caching runs driven by a PDA: placement, delivery, decoding.

The keyed scheme encodes every library file into shares (see ``sharing``),
places share rows by the stars of the PDA and slot keys by the integers of
each column, then serves any demand vector with one keyed multicast message
per distinct integer.  The unkeyed baseline caches raw subfiles and sends
plain XOR messages, for rate and subpacketization comparison.

Determinism: a run is a pure function of (config, seed, demand).  Generated
values are drawn from one seeded generator in a fixed order: files by index,
then key vectors by file index, then slot keys by slot index.

File sizes: the requested B is padded up to the nearest multiple of
(F-Z)*r bits (F for the baseline) so that every subfile is a whole number of
field symbols; the pad is recorded and stripped again on decode.  All rate
and cache accounting uses the padded size, under which every identity is
exact: payload bits per slot = B/(F-Z), cache bits = M*B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .gf2 import GF2m
from .pda import PDA, SchemeParams, derive_params, serialize_pda
from .sharing import (
    CauchyMatrix,
    SharingParams,
    SymbolSeq,
    cauchy_matrix,
    decode_shares,
    encode_shares,
    file_to_secret,
    int_to_symbols,
    random_key_vector,
    random_slot_key,
    secret_to_file,
    seq_xor,
    sharing_params,
    subfile_to_symbols,
    symbols_to_int,
)

FileValue = Union[int, bytes]


class PlacementError(RuntimeError):
    """A decode needed a share or key the cache does not hold."""


def minimum_field(pda: PDA) -> GF2m:
    """Smallest default field with room for the even/odd Cauchy element split."""
    r = max(1, (2 * pda.F - 1).bit_length())
    return GF2m(r)


@dataclass(frozen=True)
class SystemConfig:
    pda: PDA
    library_size: int     # N
    file_bits: int        # B as requested
    seed: int
    field: GF2m
    padded_bits: int      # B rounded up to a multiple of (F-Z)*r
    params: SharingParams

    @property
    def pad_bits(self) -> int:
        return self.padded_bits - self.file_bits

    def scheme_params(self) -> SchemeParams:
        return derive_params(self.pda, self.library_size)

    def to_json(self) -> dict:
        return {
            "users": self.pda.K,
            "library_size": self.library_size,
            "file_bits": self.file_bits,
            "padded_file_bits": self.padded_bits,
            "seed": self.seed,
            "field": self.field.spec_json(),
        }


def system_config(
    pda: PDA,
    library_size: int,
    file_bits: int,
    seed: int = 0,
    field: Optional[GF2m] = None,
) -> SystemConfig:
    if library_size < 1:
        raise ValueError(f"library size must be >= 1, got {library_size}")
    if file_bits < 1:
        raise ValueError(f"file size must be >= 1 bit, got {file_bits}")
    if pda.F == pda.Z:
        raise ValueError("PDA has no integer entries (F == Z); nothing to deliver")
    if field is None:
        field = minimum_field(pda)
    if field.order < 2 * pda.F:
        raise ValueError(
            f"field of order {field.order} too small for F={pda.F} shares; need 2^r >= {2 * pda.F}"
        )
    secret_len = pda.F - pda.Z
    align = secret_len * field.r
    padded = -(-file_bits // align) * align
    return SystemConfig(
        pda=pda,
        library_size=library_size,
        file_bits=file_bits,
        seed=seed,
        field=field,
        padded_bits=padded,
        params=sharing_params(field, pda.F, pda.Z, padded),
    )


@dataclass(frozen=True)
class Cache:
    """One user's placed content: share rows of every file plus slot keys."""

    user: int                                       # 1-based
    shares: dict[tuple[int, int], SymbolSeq]        # (file index 0-based, row 0-based)
    keys: dict[int, SymbolSeq]                      # slot -> pad sequence

    def bit_size(self, params: SharingParams) -> int:
        return (len(self.shares) + len(self.keys)) * params.subfile_bits

    def manifest(self) -> dict:
        rows = sorted({j + 1 for (_, j) in self.shares})
        return {"user": self.user, "share_rows": rows, "keys": sorted(self.keys)}


@dataclass(frozen=True)
class Transcript:
    """The broadcast of one delivery phase: one keyed payload per slot."""

    scheme: str                  # "secret" or "plain"
    demand: tuple[int, ...]
    payloads: tuple[int, ...]    # packed payload bits, slot order
    payload_bits: int

    @property
    def slots(self) -> int:
        return len(self.payloads)

    @property
    def bits_sent(self) -> int:
        return self.slots * self.payload_bits

    def payload_hex(self, slot: int) -> str:
        width = max(1, -(-self.payload_bits // 4))
        return f"{self.payloads[slot - 1]:0{width}x}"

    def wire_messages(self) -> list[bytes]:
        """Framed messages: 2-byte slot index then the payload bytes.

        Header bytes are framing only and never enter rate accounting.
        """
        nbytes = max(1, -(-self.payload_bits // 8))
        return [
            s.to_bytes(2, "big") + self.payloads[s - 1].to_bytes(nbytes, "big")
            for s in range(1, self.slots + 1)
        ]

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "demand": list(self.demand),
            "payload_bits": self.payload_bits,
            "bits_sent": self.bits_sent,
            "messages": [
                {"slot": s, "hex": self.payload_hex(s)} for s in range(1, self.slots + 1)
            ],
            "wire": [frame.hex() for frame in self.wire_messages()],
        }


@dataclass(frozen=True)
class SystemState:
    config: SystemConfig
    G: CauchyMatrix
    library: tuple[int, ...]                      # original B-bit file values
    secrets: tuple[tuple[SymbolSeq, ...], ...]    # per file: F-Z subfile sequences
    key_vectors: tuple[tuple[SymbolSeq, ...], ...]
    shares: tuple[tuple[SymbolSeq, ...], ...]     # per file: F share sequences
    slot_keys: tuple[SymbolSeq, ...]              # one pad per slot
    caches: tuple[Cache, ...]

    @property
    def params(self) -> SharingParams:
        return self.config.params


def _coerce_file(value: FileValue, bits: int, index: int) -> int:
    if isinstance(value, bytes):
        if len(value) * 8 != bits:
            raise ValueError(
                f"file {index} is {len(value) * 8} bits, expected exactly {bits}"
            )
        return int.from_bytes(value, "big")
    value = int(value)
    if not 0 <= value < (1 << bits):
        raise ValueError(f"file {index} does not fit in {bits} bits")
    return value


def _coerce_component(params: SharingParams, value) -> SymbolSeq:
    if isinstance(value, int):
        return subfile_to_symbols(params, value)
    seq = tuple(int(v) for v in value)
    if len(seq) != params.symbols:
        raise ValueError(f"component has {len(seq)} symbols, expected {params.symbols}")
    for v in seq:
        params.field.check_element(v)
    return seq


def setup(
    cfg: SystemConfig,
    files: Optional[Sequence[FileValue]] = None,
    key_vectors: Optional[Sequence[Sequence]] = None,
    slot_keys: Optional[Sequence] = None,
) -> SystemState:
    """Encode the library, draw randomness, and fill every cache.

    ``files``, ``key_vectors`` and ``slot_keys`` override the seeded draws
    (components are given as F_s-bit ints or symbol sequences), which lets a
    run be pinned to externally chosen randomness.
    """
    pda, params = cfg.pda, cfg.params
    rng = random.Random(cfg.seed)

    if files is None:
        library = tuple(rng.getrandbits(cfg.file_bits) for _ in range(cfg.library_size))
    else:
        if len(files) != cfg.library_size:
            raise ValueError(f"expected {cfg.library_size} files, got {len(files)}")
        library = tuple(
            _coerce_file(v, cfg.file_bits, n + 1) for n, v in enumerate(files)
        )

    if key_vectors is None:
        keyvecs = tuple(random_key_vector(params, rng) for _ in range(cfg.library_size))
    else:
        if len(key_vectors) != cfg.library_size:
            raise ValueError(f"expected {cfg.library_size} key vectors")
        keyvecs = tuple(
            tuple(_coerce_component(params, comp) for comp in vec) for vec in key_vectors
        )
        for vec in keyvecs:
            if len(vec) != params.key_len:
                raise ValueError(f"key vectors need {params.key_len} components")

    if slot_keys is None:
        slots = tuple(random_slot_key(params, rng) for _ in range(pda.S))
    else:
        if len(slot_keys) != pda.S:
            raise ValueError(f"expected {pda.S} slot keys, got {len(slot_keys)}")
        slots = tuple(_coerce_component(params, v) for v in slot_keys)

    G = cauchy_matrix(cfg.field, pda.F, pda.F)
    pad = cfg.pad_bits
    secrets = tuple(file_to_secret(params, v << pad) for v in library)
    shares = tuple(
        encode_shares(params, G, secrets[n], keyvecs[n]) for n in range(cfg.library_size)
    )

    caches = []
    for k in range(pda.K):
        cached_shares = {
            (n, j): shares[n][j]
            for n in range(cfg.library_size)
            for j in pda.star_rows(k)
        }
        cached_keys = {s: slots[s - 1] for s in pda.column_slots(k)}
        caches.append(Cache(user=k + 1, shares=cached_shares, keys=cached_keys))

    return SystemState(
        config=cfg,
        G=G,
        library=library,
        secrets=secrets,
        key_vectors=keyvecs,
        shares=shares,
        slot_keys=slots,
        caches=tuple(caches),
    )


def _check_demand(demand: Sequence[int], users: int, library_size: int) -> tuple[int, ...]:
    demand = tuple(int(d) for d in demand)
    if len(demand) != users:
        raise ValueError(f"demand vector has {len(demand)} entries, expected {users}")
    for d in demand:
        if not 1 <= d <= library_size:
            raise ValueError(f"demand {d} outside library [1..{library_size}]")
    return demand


def deliver(state: SystemState, demand: Sequence[int]) -> Transcript:
    """One keyed multicast per slot: XOR of the scheduled shares plus the pad."""
    cfg = state.config
    pda, params = cfg.pda, cfg.params
    demand = _check_demand(demand, pda.K, cfg.library_size)
    cells = pda.slot_cells()
    payloads = []
    for s in range(1, pda.S + 1):
        acc: SymbolSeq = (0,) * params.symbols
        for (j, k) in cells[s]:
            acc = seq_xor(acc, state.shares[demand[k] - 1][j])
        acc = seq_xor(acc, state.slot_keys[s - 1])
        payloads.append(symbols_to_int(acc, cfg.field.r))
    return Transcript(
        scheme="secret",
        demand=demand,
        payloads=tuple(payloads),
        payload_bits=params.subfile_bits,
    )


def user_decode(
    cache: Cache,
    transcript: Transcript,
    pda: PDA,
    G: CauchyMatrix,
    user: int,
    original_bits: Optional[int] = None,
) -> int:
    """Recover the user's demanded file from its cache and the broadcast only.

    This deliberately takes a single cache rather than the system state, so a
    decode can never read another user's cache or the raw library.  Returns
    the padded file value, or the original B bits when ``original_bits`` is
    given.
    """
    if not 1 <= user <= pda.K:
        raise ValueError(f"user {user} outside [1..{pda.K}]")
    if cache.user != user:
        raise ValueError(f"cache belongs to user {cache.user}, not {user}")
    k0 = user - 1
    demand = transcript.demand
    wanted = demand[k0] - 1
    field = G.field
    secret_len = pda.F - pda.Z
    params = sharing_params(field, pda.F, pda.Z, transcript.payload_bits * secret_len)
    cells = pda.slot_cells()

    recovered: dict[int, SymbolSeq] = {}
    for s, j in pda.column_slots(k0).items():
        key = cache.keys.get(s)
        if key is None:
            raise PlacementError(
                f"user {user} holds no key for slot {s} (cell ({j + 1},{user}))"
            )
        acc = int_to_symbols(transcript.payloads[s - 1], field.r, params.symbols)
        acc = seq_xor(acc, key)
        for (j2, k2) in cells[s]:
            if k2 == k0:
                continue
            interferer = cache.shares.get((demand[k2] - 1, j2))
            if interferer is None:
                raise PlacementError(
                    f"user {user} cannot cancel share (file {demand[k2]}, row {j2 + 1}) "
                    f"for slot {s}: not cached"
                )
            acc = seq_xor(acc, interferer)
        recovered[j] = acc

    full_shares = []
    for j in range(pda.F):
        if j in recovered:
            full_shares.append(recovered[j])
        else:
            share = cache.shares.get((wanted, j))
            if share is None:
                raise PlacementError(
                    f"user {user} is missing cached share (file {wanted + 1}, row {j + 1})"
                )
            full_shares.append(share)

    secret, _ = decode_shares(params, G, full_shares)
    value = secret_to_file(params, secret)
    if original_bits is not None:
        value >>= params.file_bits - original_bits
    return value


def decode_all(state: SystemState, transcript: Transcript) -> list[dict]:
    """Run every user's decode and compare against the planted library."""
    cfg = state.config
    results = []
    for k in range(1, cfg.pda.K + 1):
        entry: dict = {"user": k, "demand": transcript.demand[k - 1]}
        try:
            got = user_decode(
                state.caches[k - 1],
                transcript,
                cfg.pda,
                state.G,
                k,
                original_bits=cfg.file_bits,
            )
            entry["ok"] = got == state.library[transcript.demand[k - 1] - 1]
        except PlacementError as exc:
            entry["ok"] = False
            entry["error"] = str(exc)
        results.append(entry)
    return results


# ----------------------------------------------------------------------
# unkeyed baseline
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BaselineState:
    """The plain PDA scheme: raw subfiles in caches, unkeyed XOR delivery."""

    pda: PDA
    library_size: int
    file_bits: int
    padded_bits: int
    subfile_bits: int
    library: tuple[int, ...]
    subfiles: tuple[tuple[int, ...], ...]     # per file: F subfile values
    caches: tuple[dict[tuple[int, int], int], ...]


def baseline_setup(
    pda: PDA,
    library_size: int,
    file_bits: int,
    seed: int = 0,
    files: Optional[Sequence[FileValue]] = None,
) -> BaselineState:
    if library_size < 1 or file_bits < 1:
        raise ValueError("library size and file size must be positive")
    if pda.F == pda.Z:
        raise ValueError("PDA has no integer entries (F == Z); nothing to deliver")
    rng = random.Random(seed)
    if files is None:
        library = tuple(rng.getrandbits(file_bits) for _ in range(library_size))
    else:
        if len(files) != library_size:
            raise ValueError(f"expected {library_size} files, got {len(files)}")
        library = tuple(_coerce_file(v, file_bits, n + 1) for n, v in enumerate(files))
    padded = -(-file_bits // pda.F) * pda.F
    fs = padded // pda.F
    mask = (1 << fs) - 1
    subfiles = tuple(
        tuple(((v << (padded - file_bits)) >> (padded - (j + 1) * fs)) & mask for j in range(pda.F))
        for v in library
    )
    caches = tuple(
        {
            (n, j): subfiles[n][j]
            for n in range(library_size)
            for j in pda.star_rows(k)
        }
        for k in range(pda.K)
    )
    return BaselineState(
        pda=pda,
        library_size=library_size,
        file_bits=file_bits,
        padded_bits=padded,
        subfile_bits=fs,
        library=library,
        subfiles=subfiles,
        caches=caches,
    )


def baseline_deliver(state: BaselineState, demand: Sequence[int]) -> Transcript:
    pda = state.pda
    demand = _check_demand(demand, pda.K, state.library_size)
    cells = pda.slot_cells()
    payloads = []
    for s in range(1, pda.S + 1):
        acc = 0
        for (j, k) in cells[s]:
            acc ^= state.subfiles[demand[k] - 1][j]
        payloads.append(acc)
    return Transcript(
        scheme="plain",
        demand=demand,
        payloads=tuple(payloads),
        payload_bits=state.subfile_bits,
    )


def baseline_decode(
    cache: dict[tuple[int, int], int],
    transcript: Transcript,
    pda: PDA,
    user: int,
    original_bits: Optional[int] = None,
) -> int:
    if not 1 <= user <= pda.K:
        raise ValueError(f"user {user} outside [1..{pda.K}]")
    k0 = user - 1
    demand = transcript.demand
    wanted = demand[k0] - 1
    cells = pda.slot_cells()
    fs = transcript.payload_bits
    pieces: dict[int, int] = {}
    for s, j in pda.column_slots(k0).items():
        acc = transcript.payloads[s - 1]
        for (j2, k2) in cells[s]:
            if k2 == k0:
                continue
            try:
                acc ^= cache[(demand[k2] - 1, j2)]
            except KeyError:
                raise PlacementError(
                    f"user {user} cannot cancel subfile (file {demand[k2]}, row {j2 + 1})"
                ) from None
        pieces[j] = acc
    value = 0
    for j in range(pda.F):
        piece = pieces[j] if j in pieces else cache[(wanted, j)]
        value = (value << fs) | piece
    if original_bits is not None:
        value >>= pda.F * fs - original_bits
    return value


def baseline_decode_all(state: BaselineState, transcript: Transcript) -> list[dict]:
    results = []
    for k in range(1, state.pda.K + 1):
        entry: dict = {"user": k, "demand": transcript.demand[k - 1]}
        try:
            got = baseline_decode(
                state.caches[k - 1],
                transcript,
                state.pda,
                k,
                original_bits=state.file_bits,
            )
            entry["ok"] = got == state.library[transcript.demand[k - 1] - 1]
        except PlacementError as exc:
            entry["ok"] = False
            entry["error"] = str(exc)
        results.append(entry)
    return results


# ----------------------------------------------------------------------
# rate accounting
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RateReport:
    scheme: str
    slots: int
    payload_bits: int
    bits_sent: int
    file_bits: int
    rate: Fraction

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "slots": self.slots,
            "payload_bits": self.payload_bits,
            "bits_sent": self.bits_sent,
            "file_bits": self.file_bits,
            "rate": {"exact": str(self.rate), "decimal": f"{float(self.rate):.4f}"},
        }


def measure(transcript: Transcript, source: Union[SystemConfig, BaselineState]) -> RateReport:
    """Check the transmitted bit count against the scheme identity.

    The keyed scheme must send exactly S*B/(F-Z) payload bits, the baseline
    S*B/F (B the padded file size); any mismatch is an internal fault, not a
    report entry.
    """
    pda = source.pda
    padded = source.padded_bits
    if transcript.scheme == "secret":
        expected = pda.S * padded // (pda.F - pda.Z)
    else:
        expected = pda.S * padded // pda.F
    if transcript.bits_sent != expected:
        raise RuntimeError(
            f"internal fault: transcript carries {transcript.bits_sent} payload bits, "
            f"scheme identity requires {expected}"
        )
    return RateReport(
        scheme=transcript.scheme,
        slots=transcript.slots,
        payload_bits=transcript.payload_bits,
        bits_sent=transcript.bits_sent,
        file_bits=padded,
        rate=Fraction(transcript.bits_sent, padded),
    )


# ----------------------------------------------------------------------
# run report
# ----------------------------------------------------------------------

def run_report(
    state: SystemState,
    transcript: Optional[Transcript] = None,
    decode_results: Optional[list[dict]] = None,
    audit: Optional[dict] = None,
) -> dict:
    """The JSON document a keyed simulation emits; key order is fixed."""
    cfg = state.config
    pda = cfg.pda
    report: dict = {
        "schema": "pdacache-run-report-v1",
        "scheme": "secret",
        "config": cfg.to_json(),
        "pda": {
            "K": pda.K,
            "F": pda.F,
            "Z": pda.Z,
            "S": pda.S,
            "regularity": pda.regularity(),
            "grid": serialize_pda(pda),
        },
        "field": cfg.field.spec_json(),
        "cauchy": state.G.to_json(),
        "params": cfg.scheme_params().to_json(),
        "caches": [c.manifest() for c in state.caches],
    }
    notes = []
    if cfg.pad_bits:
        notes.append(
            f"file size padded from {cfg.file_bits} to {cfg.padded_bits} bits "
            f"(multiple of (F-Z)*r); accounting uses the padded size"
        )
    if cfg.library_size < pda.K:
        notes.append(
            "library smaller than the user population; repeated demands are "
            "served independently, with no demand-redundancy shortcuts"
        )
    if notes:
        report["notes"] = notes
    if transcript is not None:
        report["transcript"] = transcript.to_json()
        report["rate"] = measure(transcript, cfg).to_json()
    if decode_results is not None:
        report["decode"] = decode_results
    if audit is not None:
        report["audit"] = audit
    return report
