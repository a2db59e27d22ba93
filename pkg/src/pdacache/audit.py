"""Executable secrecy certificates for caching runs.

Everything a user (or a shared-link eavesdropper) observes is a known linear
combination, over GF(2^r), of independent uniform unknowns: subfile symbols,
key-vector symbols and slot-key symbols.  Splitting the unknowns into
protected columns A (subfiles of files the observer must learn nothing
about) and cover columns B (the observer's own demanded file, the key
vectors, the slot keys it does not hold), zero information leakage is exactly

    rank(B) == rank([A | B]),

i.e. no combination of observations depends on protected unknowns without
being masked by cover randomness.  For linear observations of independent
uniform inputs this rank condition is equivalent to zero mutual information,
so the certificate is exact rather than statistical.  A second, independent
engine enumerates every realization of the unknowns on tiny systems and
computes the mutual information directly; the two are cross-validated.

Certificates are per symbol position; positions are independent and
identically structured, so one position suffices.

Scenario knobs describe deliberate ablations (unkeyed slots, granted keys,
dropped key columns, a reused key vector, raw identity sharing, over-filled
caches) used to demonstrate that broken schemes are flagged with a concrete
algebraic witness.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .gf2 import GF2m, GFMatrix
from .pda import PDA
from .sharing import CauchyMatrix

EAVESDROPPER = "eavesdropper"

Observer = Union[int, str]
VarId = tuple  # ("W", n, j) | ("V", n, z) | ("T", s); n == 0 marks a shared key vector


class AuditFault(RuntimeError):
    """The two secrecy engines disagreed, or an engine contradicted itself."""


@dataclass(frozen=True)
class Scenario:
    """An (optionally ablated) variant of the scheme under audit."""

    name: str = "intact"
    omit_slot_keys: frozenset = frozenset()    # slots delivered without their pad
    grant_slot_keys: frozenset = frozenset()   # pads handed to the observer
    drop_key_columns: bool = False             # encode shares from subfiles only
    shared_key_vector: bool = False            # one key vector reused for every file
    identity_sharing: bool = False             # shares are the raw stacked components
    extra_share_rows: frozenset = frozenset()  # 1-based rows cached beyond the stars


INTACT = Scenario()


def unkeyed_slot(s: int) -> Scenario:
    return Scenario(name=f"unkeyed-slot-{s}", omit_slot_keys=frozenset({s}))


def granted_key(s: int) -> Scenario:
    return Scenario(name=f"granted-key-{s}", grant_slot_keys=frozenset({s}))


def standard_mutants(pda: PDA) -> list[Scenario]:
    """Ablations that demonstrably break secrecy on multi-file systems."""
    muts = [
        Scenario(name="no-key-columns", drop_key_columns=True),
        Scenario(name="identity-sharing", identity_sharing=True),
        Scenario(name="over-cached", extra_share_rows=frozenset(range(1, pda.F + 1))),
    ]
    if pda.Z:
        muts.append(Scenario(name="shared-key-vector", shared_key_vector=True))
    return muts


def var_name(var: VarId) -> str:
    kind = var[0]
    if kind == "W":
        return f"W{var[1]}.{var[2]}"
    if kind == "V":
        return f"Vshared.{var[2]}" if var[1] == 0 else f"V{var[1]}.{var[2]}"
    return f"T{var[1]}"


def observer_name(observer: Observer) -> str:
    return EAVESDROPPER if observer == EAVESDROPPER else f"user-{observer}"


# ----------------------------------------------------------------------
# observation systems
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ObservationRow:
    label: str
    coeffs: dict  # VarId -> nonzero field element


@dataclass(frozen=True)
class ObservationSystem:
    field: GF2m
    observer: Observer
    demand: tuple[int, ...]
    scenario: Scenario
    protected: tuple[VarId, ...]
    cover: tuple[VarId, ...]
    known: tuple[VarId, ...]
    rows: tuple[ObservationRow, ...]

    def matrix_for(self, vars_: Sequence[VarId]) -> GFMatrix:
        return GFMatrix(
            self.field,
            [[row.coeffs.get(v, 0) for v in vars_] for row in self.rows],
            ncols=len(vars_),
        )


def _share_templates(
    G: CauchyMatrix, secret_len: int, key_len: int, scenario: Scenario
) -> list[list[tuple[str, int, int]]]:
    """Per share row: (kind, 1-based component index, coefficient) triples."""
    templates: list[list[tuple[str, int, int]]] = []
    for j in range(secret_len + key_len):
        entries: list[tuple[str, int, int]] = []
        if scenario.identity_sharing:
            if j < secret_len:
                entries.append(("W", j + 1, 1))
            elif not scenario.drop_key_columns:
                entries.append(("V", j - secret_len + 1, 1))
        else:
            row = G.row(j)
            for m in range(secret_len):
                if row[m]:
                    entries.append(("W", m + 1, row[m]))
            if not scenario.drop_key_columns:
                for z in range(key_len):
                    if row[secret_len + z]:
                        entries.append(("V", z + 1, row[secret_len + z]))
        templates.append(entries)
    return templates


def _instantiate(kind: str, idx: int, n: int, scenario: Scenario) -> VarId:
    if kind == "W":
        return ("W", n, idx)
    return ("V", 0 if scenario.shared_key_vector else n, idx)


def _payload_coeffs(
    pda: PDA,
    demand: Sequence[int],
    templates: list[list[tuple[str, int, int]]],
    scenario: Scenario,
) -> list[dict]:
    """Coefficient dict of every delivery slot, in slot order."""
    cells = pda.slot_cells()
    out = []
    for s in range(1, pda.S + 1):
        coeffs: dict = {}
        for (j, k) in cells[s]:
            n = demand[k]
            for kind, idx, c in templates[j]:
                var = _instantiate(kind, idx, n, scenario)
                acc = coeffs.get(var, 0) ^ c
                if acc:
                    coeffs[var] = acc
                else:
                    coeffs.pop(var, None)
        if s not in scenario.omit_slot_keys:
            coeffs[("T", s)] = 1
        out.append(coeffs)
    return out


def _check_observer(observer: Observer, users: int) -> Observer:
    if observer == EAVESDROPPER:
        return observer
    if isinstance(observer, int) and 1 <= observer <= users:
        return observer
    raise ValueError(f"observer must be a user in [1..{users}] or {EAVESDROPPER!r}")


def _star_rows(pda: PDA, observer: Observer, scenario: Scenario) -> list[int]:
    if observer == EAVESDROPPER:
        return []
    extra = set()
    for j in scenario.extra_share_rows:
        if not 1 <= j <= pda.F:
            raise ValueError(f"extra share row {j} outside [1..{pda.F}]")
        extra.add(j - 1)
    return sorted(set(pda.star_rows(observer - 1)) | extra)


def _known_slots(pda: PDA, observer: Observer, scenario: Scenario) -> list[int]:
    slots = set(scenario.grant_slot_keys)
    if observer != EAVESDROPPER:
        slots |= set(pda.column_slots(observer - 1))
    for s in slots:
        if not 1 <= s <= pda.S:
            raise ValueError(f"slot key {s} outside [1..{pda.S}]")
    return sorted(slots)


def build_observation(
    pda: PDA,
    library_size: int,
    G: CauchyMatrix,
    observer: Observer,
    demand: Sequence[int],
    scenario: Scenario = INTACT,
) -> ObservationSystem:
    """Assemble every symbol the observer sees as one row over the unknowns."""
    observer = _check_observer(observer, pda.K)
    demand = tuple(int(d) for d in demand)
    if len(demand) != pda.K or any(not 1 <= d <= library_size for d in demand):
        raise ValueError(f"demand must be {pda.K} entries in [1..{library_size}]")
    secret_len = pda.F - pda.Z
    templates = _share_templates(G, secret_len, pda.Z, scenario)

    rows: list[ObservationRow] = []
    star_rows = _star_rows(pda, observer, scenario)
    if observer != EAVESDROPPER:
        for n in range(1, library_size + 1):
            for j in star_rows:
                coeffs = {
                    _instantiate(kind, idx, n, scenario): c
                    for kind, idx, c in templates[j]
                }
                rows.append(ObservationRow(f"cached-share n={n} row={j + 1}", coeffs))
    known_slots = _known_slots(pda, observer, scenario)
    cached = set() if observer == EAVESDROPPER else set(pda.column_slots(observer - 1))
    for s in known_slots:
        tag = "cached-key" if s in cached else "granted-key"
        rows.append(ObservationRow(f"{tag} slot={s}", {("T", s): 1}))
    for s, coeffs in enumerate(_payload_coeffs(pda, demand, templates, scenario), start=1):
        rows.append(ObservationRow(f"delivery slot={s}", dict(coeffs)))

    w_vars = [("W", n, j) for n in range(1, library_size + 1) for j in range(1, secret_len + 1)]
    if scenario.drop_key_columns or pda.Z == 0:
        v_vars = []
    elif scenario.shared_key_vector:
        v_vars = [("V", 0, z) for z in range(1, pda.Z + 1)]
    else:
        v_vars = [("V", n, z) for n in range(1, library_size + 1) for z in range(1, pda.Z + 1)]
    t_vars = [("T", s) for s in range(1, pda.S + 1)]

    if observer == EAVESDROPPER:
        protected = tuple(w_vars)
    else:
        own = demand[observer - 1]
        protected = tuple(v for v in w_vars if v[1] != own)
    known = tuple(("T", s) for s in known_slots)
    known_set = set(known)
    protected_set = set(protected)
    cover = tuple(
        v for v in w_vars + v_vars + t_vars if v not in protected_set and v not in known_set
    )
    return ObservationSystem(
        field=G.field,
        observer=observer,
        demand=demand,
        scenario=scenario,
        protected=protected,
        cover=cover,
        known=known,
        rows=tuple(rows),
    )


# ----------------------------------------------------------------------
# rank certificates
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A combination of observations that pins down protected content."""

    combination: tuple[tuple[str, int], ...]   # (row label, coefficient), nonzero only
    exposed: tuple[tuple[str, int], ...]       # (protected var name, coefficient)
    row_coeffs: tuple[int, ...]                # full coefficient vector over rows

    def to_json(self) -> dict:
        return {
            "combination": [{"row": lbl, "coeff": c} for lbl, c in self.combination],
            "exposed": [{"var": v, "coeff": c} for v, c in self.exposed],
        }


@dataclass(frozen=True)
class LeakageReport:
    observer: Observer
    demand: tuple[int, ...]
    scenario: str
    leak_free: bool
    method: str = "rank"
    rank_cover: Optional[int] = None
    rank_full: Optional[int] = None
    witness: Optional[Witness] = None

    def to_json(self) -> dict:
        out = {
            "observer": observer_name(self.observer),
            "demand": list(self.demand),
            "scenario": self.scenario,
            "leak_free": self.leak_free,
            "method": self.method,
        }
        if self.rank_cover is not None:
            out["rank_cover"] = self.rank_cover
            out["rank_full"] = self.rank_full
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def certify_zero_leakage(obs: ObservationSystem) -> LeakageReport:
    """Exact rank certificate; produces an algebraic witness on failure."""
    B = obs.matrix_for(obs.cover)
    rank_cover = B.rank()
    if not obs.protected:
        return LeakageReport(
            obs.observer, obs.demand, obs.scenario.name, True,
            rank_cover=rank_cover, rank_full=rank_cover,
        )
    A = obs.matrix_for(obs.protected)
    rank_full = B.augment(A).rank()
    leak_free = rank_full == rank_cover
    witness = None
    if not leak_free:
        f = obs.field
        for c in B.left_null_space():
            exposed = {}
            for col, var in enumerate(obs.protected):
                acc = 0
                for ci, row in zip(c, obs.rows):
                    a = row.coeffs.get(var, 0)
                    if ci and a:
                        acc ^= f.mul(ci, a)
                if acc:
                    exposed[var] = acc
            if exposed:
                witness = Witness(
                    combination=tuple(
                        (row.label, ci) for ci, row in zip(c, obs.rows) if ci
                    ),
                    exposed=tuple((var_name(v), c2) for v, c2 in sorted(exposed.items())),
                    row_coeffs=tuple(c),
                )
                break
        if witness is None:
            raise AuditFault("rank deficit without a witness; elimination is inconsistent")
    return LeakageReport(
        obs.observer, obs.demand, obs.scenario.name, leak_free,
        rank_cover=rank_cover, rank_full=rank_full, witness=witness,
    )


def verify_witness(obs: ObservationSystem, witness: Witness) -> bool:
    """Independently re-check a witness: kills cover, touches protected."""
    f = obs.field
    c = witness.row_coeffs
    if len(c) != len(obs.rows) or not any(c):
        return False

    def combo(var: VarId) -> int:
        acc = 0
        for ci, row in zip(c, obs.rows):
            a = row.coeffs.get(var, 0)
            if ci and a:
                acc ^= f.mul(ci, a)
        return acc

    if any(combo(v) for v in obs.cover):
        return False
    return any(combo(v) for v in obs.protected)


# ----------------------------------------------------------------------
# fast batch engine
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class _Layout:
    pos: dict          # VarId -> column band index
    boundary_bits: int # bit positions below this belong to protected columns


class SystemAuditor:
    """Batch rank certificates for one (PDA, library, matrix, scenario).

    Internally expands the GF(2^r) system to GF(2) via companion blocks and
    keeps bit-packed echelon state, with the demand-independent cache rows
    eliminated once per (observer, demanded file).  Observationally identical
    to ``certify_zero_leakage``; any flagged leak is re-derived through the
    exact engine, which also supplies the witness.
    """

    def __init__(
        self,
        pda: PDA,
        library_size: int,
        G: CauchyMatrix,
        scenario: Scenario = INTACT,
    ):
        self.pda = pda
        self.library_size = library_size
        self.G = G
        self.scenario = scenario
        self.field = G.field
        self.r = G.field.r
        f = G.field
        self._comp = [
            [
                sum(((f.mul(a, 1 << c) >> b) & 1) << c for c in range(self.r))
                for b in range(self.r)
            ]
            for a in range(f.order)
        ]
        self._templates = _share_templates(G, pda.F - pda.Z, pda.Z, scenario)
        self._layouts: dict = {}
        self._bases: dict = {}

    # -- column layouts -------------------------------------------------
    def _layout(self, observer: Observer, own_file: Optional[int]) -> _Layout:
        key = (observer, own_file)
        cached = self._layouts.get(key)
        if cached is not None:
            return cached
        pda, N = self.pda, self.library_size
        secret_len = pda.F - pda.Z
        scenario = self.scenario
        known = set(("T", s) for s in _known_slots(pda, observer, scenario))
        protected = [
            ("W", n, j)
            for n in range(1, N + 1)
            if observer == EAVESDROPPER or n != own_file
            for j in range(1, secret_len + 1)
        ]
        cover: list[VarId] = []
        if observer != EAVESDROPPER and own_file is not None:
            cover.extend(("W", own_file, j) for j in range(1, secret_len + 1))
        if not scenario.drop_key_columns and pda.Z:
            if scenario.shared_key_vector:
                cover.extend(("V", 0, z) for z in range(1, pda.Z + 1))
            else:
                cover.extend(
                    ("V", n, z) for n in range(1, N + 1) for z in range(1, pda.Z + 1)
                )
        cover.extend(("T", s) for s in range(1, pda.S + 1) if ("T", s) not in known)
        pos = {v: i for i, v in enumerate(protected)}
        for v in cover:
            pos[v] = len(pos)
        layout = _Layout(pos=pos, boundary_bits=len(protected) * self.r)
        self._layouts[key] = layout
        return layout

    # -- bit rows ---------------------------------------------------------
    def _bitrows(self, coeffs: dict, layout: _Layout) -> list[int]:
        r = self.r
        comp = self._comp
        lanes = [0] * r
        for var, a in coeffs.items():
            idx = layout.pos.get(var)
            if idx is None:  # known to the observer; a constant, not an unknown
                continue
            shift = idx * r
            rows_a = comp[a]
            for b in range(r):
                m = rows_a[b]
                if m:
                    lanes[b] |= m << shift
        return [lane for lane in lanes if lane]

    @staticmethod
    def _insert(pivots: dict, row: int, boundary: int) -> bool:
        """Reduce and insert one bit row; True when its pivot is protected."""
        while row:
            p = row.bit_length() - 1
            cur = pivots.get(p)
            if cur is None:
                pivots[p] = row
                return p < boundary
            row ^= cur
        return False

    def _base(self, observer: Observer, own_file: Optional[int]) -> tuple[dict, bool]:
        key = (observer, own_file)
        cached = self._bases.get(key)
        if cached is not None:
            return cached
        layout = self._layout(observer, own_file)
        pivots: dict = {}
        leak = False
        if observer != EAVESDROPPER:
            star_rows = _star_rows(self.pda, observer, self.scenario)
            for n in range(1, self.library_size + 1):
                for j in star_rows:
                    coeffs = {
                        _instantiate(kind, idx, n, self.scenario): c
                        for kind, idx, c in self._templates[j]
                    }
                    for lane in self._bitrows(coeffs, layout):
                        if self._insert(pivots, lane, layout.boundary_bits):
                            leak = True
        self._bases[key] = (pivots, leak)
        return pivots, leak

    # -- certificates -----------------------------------------------------
    def leak_free(self, observer: Observer, demand: Sequence[int]) -> bool:
        demand = tuple(demand)
        payloads = _payload_coeffs(self.pda, demand, self._templates, self.scenario)
        return self._leak_free_prepared(observer, demand, payloads)

    def _leak_free_prepared(
        self, observer: Observer, demand: tuple[int, ...], payloads: list[dict]
    ) -> bool:
        own = None if observer == EAVESDROPPER else demand[observer - 1]
        base, base_leak = self._base(observer, own)
        if base_leak:
            return False
        layout = self._layout(observer, own)
        pivots = dict(base)
        for coeffs in payloads:
            for lane in self._bitrows(coeffs, layout):
                if self._insert(pivots, lane, layout.boundary_bits):
                    return False
        return True

    def audit(
        self,
        demands: Iterable[Sequence[int]],
        observers: Optional[Sequence[Observer]] = None,
        witnesses: bool = True,
    ) -> list[LeakageReport]:
        """Certify every (observer, demand) pair; leaks carry witnesses."""
        if observers is None:
            observers = list(range(1, self.pda.K + 1)) + [EAVESDROPPER]
        reports = []
        for demand in demands:
            demand = tuple(int(d) for d in demand)
            payloads = _payload_coeffs(self.pda, demand, self._templates, self.scenario)
            for observer in observers:
                ok = self._leak_free_prepared(observer, demand, payloads)
                if ok:
                    reports.append(
                        LeakageReport(observer, demand, self.scenario.name, True)
                    )
                    continue
                slow = certify_zero_leakage(
                    build_observation(
                        self.pda, self.library_size, self.G, observer, demand, self.scenario
                    )
                )
                if slow.leak_free:
                    raise AuditFault(
                        f"engines disagree for {observer_name(observer)}, demand {demand}"
                    )
                if not witnesses:
                    slow = replace(slow, witness=None)
                reports.append(slow)
        return reports


def audit_summary(reports: Sequence[LeakageReport]) -> dict:
    leaks = [rep for rep in reports if not rep.leak_free]
    return {
        "schema": "pdacache-audit-v1",
        "certificates": len(reports),
        "leak_free": not leaks,
        "leaks": [rep.to_json() for rep in leaks],
    }


# ----------------------------------------------------------------------
# demand coverage
# ----------------------------------------------------------------------

def demand_space(
    library_size: int,
    users: int,
    seed: int = 0,
    exhaustive_cap: int = 4096,
    sample_size: int = 256,
) -> list[tuple[int, ...]]:
    """All demand vectors when N^K is small, else a seeded sample plus all
    constant vectors."""
    total = library_size ** users
    if total <= exhaustive_cap:
        return list(product(range(1, library_size + 1), repeat=users))
    rng = random.Random(seed)
    chosen: dict[tuple[int, ...], None] = {}
    while len(chosen) < sample_size:
        chosen[tuple(rng.randint(1, library_size) for _ in range(users))] = None
    for d in range(1, library_size + 1):
        chosen.setdefault((d,) * users, None)
    return list(chosen)


# ----------------------------------------------------------------------
# exhaustive mutual-information oracle
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MIResult:
    observer: Observer
    demand: tuple[int, ...]
    scenario: str
    bits: float
    exact_zero: bool
    states: int
    variables: int

    def to_json(self) -> dict:
        return {
            "observer": observer_name(self.observer),
            "demand": list(self.demand),
            "scenario": self.scenario,
            "mutual_information_bits": self.bits,
            "exact_zero": self.exact_zero,
            "states": self.states,
            "method": "exhaustive",
        }


def brute_force_mi(
    pda: PDA,
    library_size: int,
    G: CauchyMatrix,
    observer: Observer,
    demand: Sequence[int],
    scenario: Scenario = INTACT,
    max_states: int = 1 << 20,
) -> MIResult:
    """Exact mutual information between protected content and observations.

    Enumerates one symbol position of every unknown that can influence the
    observer's view, tallies the exact joint distribution, and reports the
    mutual information in bits.  Zero is detected by the exact factorization
    test on counts, never by floating-point comparison.
    """
    obs = build_observation(pda, library_size, G, observer, demand, scenario)
    f = obs.field
    q = f.order

    used_set: set = set()
    for row in obs.rows:
        used_set.update(row.coeffs)
    used = [v for v in obs.protected + obs.cover + obs.known if v in used_set]
    states = q ** len(used)
    if states > max_states:
        raise ValueError(
            f"state space {q}^{len(used)} = {states} exceeds the enumeration cap "
            f"{max_states}; shrink the system"
        )
    prot_idx = [i for i, v in enumerate(used) if v in set(obs.protected)]
    row_vecs = [
        [row.coeffs.get(v, 0) for v in used]
        for row in obs.rows
        if any(row.coeffs.get(v, 0) for v in used)
    ]

    joint: Counter = Counter()
    for assign in product(range(q), repeat=len(used)):
        view = []
        for vec in row_vecs:
            acc = 0
            for c, a in zip(vec, assign):
                if c and a:
                    acc ^= f.mul(c, a)
            view.append(acc)
        prot = tuple(assign[i] for i in prot_idx)
        joint[(prot, tuple(view))] += 1

    total = states
    prot_marg: Counter = Counter()
    view_marg: Counter = Counter()
    for (prot, view), n in joint.items():
        prot_marg[prot] += n
        view_marg[view] += n

    exact_zero = all(
        n * total == prot_marg[prot] * view_marg[view]
        for (prot, view), n in joint.items()
    )
    if exact_zero:
        bits = 0.0
    else:
        bits = 0.0
        for (prot, view), n in joint.items():
            bits += (n / total) * math.log2(n * total / (prot_marg[prot] * view_marg[view]))
        bits = max(bits, 0.0)
    return MIResult(
        observer=observer,
        demand=tuple(demand),
        scenario=scenario.name,
        bits=bits,
        exact_zero=exact_zero,
        states=states,
        variables=len(used),
    )


def cross_validate(
    pda: PDA,
    library_size: int,
    G: CauchyMatrix,
    demands: Iterable[Sequence[int]],
    scenarios: Optional[Sequence[Scenario]] = None,
    observers: Optional[Sequence[Observer]] = None,
    max_states: int = 1 << 20,
) -> list[dict]:
    """Assert the rank certificate and the exhaustive oracle agree exactly.

    Runs both engines for every (scenario, demand, observer) triple; any
    disagreement raises AuditFault, since it means one engine is wrong.
    """
    if scenarios is None:
        scenarios = [INTACT] + standard_mutants(pda)
    if observers is None:
        observers = list(range(1, pda.K + 1)) + [EAVESDROPPER]
    rows = []
    for scenario in scenarios:
        for demand in demands:
            for observer in observers:
                cert = certify_zero_leakage(
                    build_observation(pda, library_size, G, observer, demand, scenario)
                )
                mi = brute_force_mi(
                    pda, library_size, G, observer, demand, scenario, max_states=max_states
                )
                agree = cert.leak_free == mi.exact_zero
                rows.append(
                    {
                        "scenario": scenario.name,
                        "observer": observer_name(observer),
                        "demand": list(demand),
                        "leak_free": cert.leak_free,
                        "mi_bits": mi.bits,
                        "agree": agree,
                    }
                )
                if not agree:
                    raise AuditFault(
                        f"certificate ({cert.leak_free}) and exhaustive oracle "
                        f"({mi.bits} bits) disagree: scenario {scenario.name}, "
                        f"{observer_name(observer)}, demand {tuple(demand)}"
                    )
    return rows
