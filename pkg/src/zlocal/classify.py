"""End-to-end enumeration of classification data (H, N, gamma, epsilon) for a
small group over an exact field, with full verification of every constructed
algebra and deduplicated reporting.

Verification stays on for every candidate: the constructors encode corrected
formulas, and the suite is the regression test against transcription drift.
A candidate that fails its own axiom suite aborts the run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import frobenius as fr
from .cocycles import (
    COCYCLE_SIZE_BOUND,
    EpsilonSystem,
    TwoCocycle,
    enumerate_cocycles,
    enumerate_epsilons,
)
from .errors import Inconsistent, InternalInconsistency, SizeBound
from .fields import is_invertible_integer, largest_available_root_order
from .groups import DEFAULT_ORDER_BOUND, FinGroup, Subgroup

ORBIT_LIMIT = 250_000


@dataclass
class Candidate:
    H: Subgroup
    N: Subgroup
    gamma: TwoCocycle
    epsilon: EpsilonSystem
    value_order: int


@dataclass
class ClassificationEntry:
    group: FinGroup
    field: object
    H: Subgroup
    N: Subgroup
    gamma: TwoCocycle
    epsilon: EpsilonSystem
    value_order: int
    cert: object = None
    audit_ok: bool = False
    characterizations_agree: bool = False
    dims: dict = dc_field(default_factory=dict)
    cohomology_key: tuple = ()
    conjugacy_key: tuple = ()
    merged_count: int = 1
    conjugacy_merged: int = 0
    possibly_isomorphic: list = dc_field(default_factory=list)
    _built: tuple = None

    def build(self):
        if self._built is None:
            self._built = fr.build_A(
                self.group, self.H, self.N, self.gamma, self.epsilon, self.field
            )
        return self._built

    def label(self):
        G = self.group
        return (
            f"A(H={{{','.join(G.labels[h] for h in self.H.elements)}}},"
            f" N={{{','.join(G.labels[n] for n in self.N.elements)}}})"
        )

    def to_json(self):
        return {
            "H": list(self.H.elements),
            "N": list(self.N.elements),
            "gamma": self.gamma.to_json(),
            "epsilon": self.epsilon.to_json(),
            "value_order": self.value_order,
            "dims": {k: str(v) for k, v in self.dims.items()},
            "cert": self.cert.to_json() if self.cert else None,
            "audit_ok": self.audit_ok,
            "characterizations_agree": self.characterizations_agree,
            "cohomology_key": _key_str(self.cohomology_key),
            "conjugacy_key": _key_str(self.conjugacy_key),
            "merged_count": self.merged_count,
            "conjugacy_merged": self.conjugacy_merged,
            "conjugacy_dedupe_heuristic": self.conjugacy_merged > 0,
            "possibly_isomorphic": self.possibly_isomorphic,
        }


def _key_str(key):
    return repr(key)


@dataclass
class EnumerationNotes:
    skipped: list = dc_field(default_factory=list)

    def add(self, kind, Hn, Nn, detail):
        self.skipped.append({"kind": kind, "H": Hn, "N": Nn, "detail": detail})


def effective_value_order(field, N_order: int, requested=None) -> int:
    bound = requested if requested is not None else N_order
    return largest_available_root_order(field, bound)


def enumerate_data(
    G: FinGroup,
    field,
    value_order=None,
    cocycle_bound: int = COCYCLE_SIZE_BOUND,
    group_bound: int = DEFAULT_ORDER_BOUND,
    notes: EnumerationNotes = None,
):
    """All admissible (H, N, gamma, epsilon) tuples in deterministic order."""
    if G.order > group_bound:
        raise SizeBound(f"|G| = {G.order} exceeds the bound {group_bound}")
    notes = notes if notes is not None else EnumerationNotes()
    subs = G.subgroups(group_bound)
    out = []
    for H in subs:
        if not is_invertible_integer(field, G.order // H.order):
            notes.add("index not invertible", H.order, None, f"|G:H| = {G.order // H.order}")
            continue
        for N in subs:
            if not H.contains(N) or not N.is_normal_in(H):
                continue
            if not is_invertible_integer(field, N.order):
                notes.add("order not invertible", H.order, N.order, f"|N| = {N.order}")
                continue
            if N.order > cocycle_bound:
                notes.add("cocycle bound", H.order, N.order,
                          f"|N| = {N.order} > bound {cocycle_bound}")
                continue
            d = effective_value_order(field, N.order, value_order)
            gammas = enumerate_cocycles(N, field, d, size_bound=cocycle_bound)
            for gamma in gammas:
                try:
                    eps_list = enumerate_epsilons(H, N, gamma, d)
                except Inconsistent as exc:
                    notes.add("epsilon inconsistent", H.order, N.order, str(exc))
                    continue
                if not eps_list:
                    notes.add("no epsilon system", H.order, N.order,
                              "gamma class admits no compatible epsilon")
                    continue
                for eps in eps_list:
                    out.append(Candidate(H, N, gamma, eps, d))
    return out, notes


# ---------------------------------------------------------------------------
# pair-cohomology canonical keys


_ORBIT_MEMO = {}


def _pair_orbit_key(G: FinGroup, H: Subgroup, N: Subgroup, field, gamma, eps, d: int):
    """Lexicographically least valid (gamma, epsilon) pair in the coboundary
    orbit over in-field-valued b; falls back to the raw pair when the orbit
    space is too large."""
    memo_key = (
        field.key(),
        H.elements,
        N.elements,
        d,
        tuple(map(tuple, gamma.exponent_table(d))),
        tuple(map(tuple, eps.exponent_table(d))),
    )
    if memo_key in _ORBIT_MEMO:
        return _ORBIT_MEMO[memo_key]
    out = _pair_orbit_key_impl(G, H, N, field, gamma, eps, d)
    _ORBIT_MEMO[memo_key] = out
    return out


def _pair_orbit_key_impl(G: FinGroup, H: Subgroup, N: Subgroup, field, gamma, eps, d: int):
    K = field.root_group_order()
    nn = N.order
    hh = H.order
    gx = np.array(gamma.exponent_table(K), dtype=np.int64)
    ex = np.array(eps.exponent_table(K), dtype=np.int64)
    nz = [i for i, g in enumerate(N.elements) if g != G.identity]
    if K ** len(nz) > ORBIT_LIMIT:
        return ("raw", tuple(map(tuple, gx)), tuple(map(tuple, ex)))
    npos = {g: i for i, g in enumerate(N.elements)}
    hpos = {g: i for i, g in enumerate(H.elements)}
    prod_idx = np.array(
        [[npos[G.mul(a, b)] for b in N.elements] for a in N.elements], dtype=np.int64
    )
    conj_idx = np.array(
        [[npos[G.conj(h, n)] for n in N.elements] for h in H.elements], dtype=np.int64
    )
    hprod_idx = np.array(
        [[hpos[G.mul(a, b)] for b in H.elements] for a in H.elements], dtype=np.int64
    )
    npos_in_h = np.array([hpos[n] for n in N.elements], dtype=np.int64)
    nconj_idx = conj_idx[npos_in_h]  # (n, m) -> n m n^{-1}
    h_idx = np.arange(hh)
    n_col = np.tile(np.arange(nn)[:, None], (1, nn))  # (n, m) -> n
    scale = K // d

    best = None
    for combo in itertools.product(range(K), repeat=len(nz)):
        b = np.zeros(nn, dtype=np.int64)
        for t, i in enumerate(nz):
            b[i] = combo[t]
        delb = (b[:, None] + b[None, :] - b[prod_idx]) % K
        g2 = (gx + delb) % K
        if np.any(g2 % scale):
            continue  # transformed cocycle leaves the mu_d window
        e2 = (ex + b[conj_idx] - b[None, :]) % K
        # validity of the transformed pair, all in exponent space:
        lhs = (g2[:, :, None] + g2[prod_idx]) % K
        rhs = (g2[:, prod_idx] + g2[None, :, :]) % K
        if not np.array_equal(lhs, rhs):
            continue
        l62 = e2[hprod_idx]
        r62 = (e2[h_idx[:, None, None], conj_idx[None, :, :]] + e2[None, :, :]) % K
        if not np.array_equal(l62, r62):
            continue
        l63 = (e2[:, prod_idx] + g2[None, :, :]) % K
        r63 = (
            e2[:, :, None] + e2[:, None, :] + g2[conj_idx[:, :, None], conj_idx[:, None, :]]
        ) % K
        if not np.array_equal(l63, r63):
            continue
        r64 = (e2[npos_in_h] + g2[nconj_idx, n_col]) % K
        if not np.array_equal(g2, r64):
            continue
        key = (tuple(map(tuple, (g2 // scale) % d)), tuple(map(tuple, e2)))
        if best is None or key < best:
            best = key
    assert best is not None  # b = 0 always validates the original pair
    return ("orbit", d) + best


def _conjugacy_key(G: FinGroup, H: Subgroup, N: Subgroup):
    best = None
    movers = []
    for g in range(G.order):
        Hc = tuple(sorted(G.conj(g, h) for h in H.elements))
        Nc = tuple(sorted(G.conj(g, n) for n in N.elements))
        key = (Hc, Nc)
        if best is None or key < best:
            best = key
            movers = [g]
        elif key == best:
            movers.append(g)
    return best, movers


def _transport_pair(G: FinGroup, H, N, field, gamma, eps, d, g):
    """(gamma, epsilon) moved to (gHg^{-1}, gNg^{-1}) along conjugation by g."""
    Hc = G.subgroup(G.conj(g, h) for h in H.elements)
    Nc = G.subgroup(G.conj(g, n) for n in N.elements)
    ginv = G.inv(g)
    gex = gamma.exponent_table(d)
    eex = eps.exponent_table(d)
    npos = {x: i for i, x in enumerate(N.elements)}
    hpos = {x: i for i, x in enumerate(H.elements)}
    gex2 = [
        [gex[npos[G.conj(ginv, x)]][npos[G.conj(ginv, y)]] for y in Nc.elements]
        for x in Nc.elements
    ]
    eex2 = [
        [eex[hpos[G.conj(ginv, h)]][npos[G.conj(ginv, x)]] for x in Nc.elements]
        for h in Hc.elements
    ]
    return (
        Hc,
        Nc,
        TwoCocycle.from_exponents(Nc, field, d, gex2),
        EpsilonSystem.from_exponents(Hc, Nc, field, d, eex2),
    )


def _dedupe_key(G: FinGroup, H, N, field, gamma, eps, d):
    """(conjugacy key, least transported pair-cohomology key): entries sharing
    this key are merged; the conjugacy part is a flagged heuristic."""
    conj_key, movers = _conjugacy_key(G, H, N)
    seen = {}
    best = None
    for g in movers:
        Hc, Nc, gam2, eps2 = _transport_pair(G, H, N, field, gamma, eps, d, g)
        raw = (
            tuple(map(tuple, gam2.exponent_table(d))),
            tuple(map(tuple, eps2.exponent_table(d))),
        )
        if raw in seen:
            continue
        seen[raw] = True
        key = _pair_orbit_key(G, Hc, Nc, field, gam2, eps2, d)
        if best is None or key < best:
            best = key
    return conj_key, best


# ---------------------------------------------------------------------------
# driver


def verify_candidate(G, field, cand: Candidate, seed: int = 0):
    """Build and fully verify one candidate; returns (cert, agree, audit_ok)."""
    A, Fd = fr.build_A(G, cand.H, cand.N, cand.gamma, cand.epsilon, field)
    cert = fr.check_rigid_frobenius(A, Fd)
    ra = fr.characterization_a(A, Fd=Fd)
    rb = fr.characterization_b(A)
    agree = cert.passed == ra.ok == rb.ok
    audit = fr.well_definedness_audit(
        G, cand.H, cand.N, cand.gamma, cand.epsilon, field, seed=seed
    )
    return A, Fd, cert, agree, audit.ok


class CertLite:
    """Verification summary shipped back from worker processes."""

    def __init__(self, data):
        self.data = data
        self.passed = data["passed"]

    def to_json(self):
        return self.data


def _make_entry(G, field, cand, cert, agree, audit_ok, dimA, ckey, conj_key):
    expected = Fraction(G.order * cand.N.order, cand.H.order)
    if expected != dimA:
        raise InternalInconsistency(f"dimension formula violated: {dimA} != {expected}")
    return ClassificationEntry(
        group=G,
        field=field,
        H=cand.H,
        N=cand.N,
        gamma=cand.gamma,
        epsilon=cand.epsilon,
        value_order=cand.value_order,
        cert=cert,
        audit_ok=audit_ok,
        characterizations_agree=agree,
        dims={
            "dim_A": Fraction(dimA),
            "fp_rep": Fraction(G.order * cand.H.order, cand.N.order),
            "fp_loc": Fraction(cand.H.order**2, cand.N.order**2),
        },
        cohomology_key=ckey,
        conjugacy_key=conj_key,
    )


_WORKER_CTX = {}


def _worker_init(gspec, fieldjson):
    from .fields import field_from_json
    from .groups import build_group

    _WORKER_CTX["G"] = build_group(gspec)
    _WORKER_CTX["F"] = field_from_json(fieldjson)


def _worker_run(args):
    idx, Hels, Nels, gorder, gexp, eorder, eexp, d, seed = args
    G, F = _WORKER_CTX["G"], _WORKER_CTX["F"]
    H, N = G.subgroup(Hels), G.subgroup(Nels)
    gamma = TwoCocycle.from_exponents(N, F, gorder, gexp)
    eps = EpsilonSystem.from_exponents(H, N, F, eorder, eexp)
    cand = Candidate(H, N, gamma, eps, d)
    A, _Fd, cert, agree, audit_ok = verify_candidate(G, F, cand, seed=seed)
    return idx, {
        "cert_json": cert.to_json(),
        "passed": cert.passed,
        "agree": agree,
        "audit_ok": audit_ok,
        "dimA": A.dim,
        "failures": [c.name for c in cert.report.failures()],
        "dedupe_key": _dedupe_key(G, H, N, F, gamma, eps, d),
    }


def classify(
    G: FinGroup,
    field,
    seed: int = 0,
    value_order=None,
    cocycle_bound: int = COCYCLE_SIZE_BOUND,
    group_bound: int = DEFAULT_ORDER_BOUND,
    jobs: int = 1,
):
    """All classification entries for G over the field, verified and deduped."""
    candidates, notes = enumerate_data(
        G, field, value_order=value_order, cocycle_bound=cocycle_bound,
        group_bound=group_bound,
    )
    results = []
    if jobs > 1 and len(candidates) > 1:
        import multiprocessing as mp

        from .fields import field_to_json

        gspec = {"kind": "table", "table": G.table.tolist(), "name": G.name}
        payload = []
        for idx, cand in enumerate(candidates):
            gorder = cand.gamma.order or field.root_group_order()
            eorder = cand.epsilon.order or field.root_group_order()
            payload.append(
                (
                    idx,
                    cand.H.elements,
                    cand.N.elements,
                    gorder,
                    cand.gamma.exponent_table(gorder),
                    eorder,
                    cand.epsilon.exponent_table(eorder),
                    cand.value_order,
                    seed + idx,
                )
            )
        with mp.Pool(
            processes=jobs, initializer=_worker_init, initargs=(gspec, field_to_json(field))
        ) as pool:
            packs = dict(pool.imap_unordered(_worker_run, payload))
        for idx, cand in enumerate(candidates):
            pack = packs[idx]
            if not (pack["passed"] and pack["agree"] and pack["audit_ok"]):
                raise InternalInconsistency(
                    f"constructed algebra failed its own suite for H={cand.H.elements} "
                    f"N={cand.N.elements}: failures={pack['failures']}"
                )
            conj_key, coh_key = pack["dedupe_key"]
            entry = _make_entry(
                G, field, cand, CertLite(pack["cert_json"]), pack["agree"],
                pack["audit_ok"], pack["dimA"], coh_key, conj_key,
            )
            results.append(entry)
    else:
        for idx, cand in enumerate(candidates):
            A, Fd, cert, agree, audit_ok = verify_candidate(G, field, cand, seed=seed + idx)
            if not cert.passed or not agree or not audit_ok:
                failing = [c.name for c in cert.report.failures()]
                raise InternalInconsistency(
                    f"constructed algebra failed its own suite for H={cand.H.elements} "
                    f"N={cand.N.elements}: cert={cert.passed} agree={agree} "
                    f"audit={audit_ok} failures={failing}"
                )
            conj_key, coh_key = _dedupe_key(
                G, cand.H, cand.N, field, cand.gamma, cand.epsilon, cand.value_order
            )
            entry = _make_entry(
                G, field, cand, cert, agree, audit_ok, A.dim, coh_key, conj_key,
            )
            entry._built = (A, Fd)
            results.append(entry)
    # dedupe: cohomology classes first, then simultaneous conjugacy (heuristic)
    merged = {}
    order = []
    for e in results:
        key = (e.conjugacy_key, e.cohomology_key)
        if key in merged:
            tgt = merged[key]
            if (e.H.elements, e.N.elements) == (tgt.H.elements, tgt.N.elements):
                tgt.merged_count += 1
            else:
                tgt.conjugacy_merged += 1
        else:
            merged[key] = e
            order.append(key)
    entries = [merged[k] for k in order]
    # possibly-isomorphic annotations across non-conjugate data
    fingerprints = {}
    for i, e in enumerate(entries):
        cj = e.cert.to_json()
        fp = (
            e.dims["dim_A"],
            tuple(sorted(cj["beta_A"].items(), key=repr)),
            tuple(sorted(cj["beta_1"].items(), key=repr)),
        )
        fingerprints.setdefault(fp, []).append(i)
    for fp, idxs in fingerprints.items():
        if len(idxs) < 2:
            continue
        for i in idxs:
            for j in idxs:
                if i == j:
                    continue
                same_conj = entries[i].conjugacy_key == entries[j].conjugacy_key
                if not same_conj:
                    entries[i].possibly_isomorphic.append(
                        {"entry": j, "reason": "matching invariants, non-conjugate data"}
                    )
    return entries, notes
