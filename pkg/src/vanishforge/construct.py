"""Eisenstein series with prescribed vanishing critical L-values.

Small weight (3 <= k <= min(p1, p2) - 2): for a set S of indices the forms
xi(alpha_m (x) alpha_n) over the kernel index set vanish at s = l + 1 for
every l in S, and one witness per l shows the conditions are independent.

Large weight: forms built from alpha_c (x) alpha_d with c >= l1, d >= l2
vanish at s = 1..l1 and s = k-l2..k-1.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import comb, factorial

from .characters import enumerate_characters, gauss_sum, is_prime
from .context import DEFAULT_CONTEXT, HypothesisError, PrecisionContext, VerificationError
from .eisenstein import EisensteinCombination
from .lfunctions import completed_lambda, l_value_report
from .serialize import SCHEMA_CERT, encode_complex, encode_real
from .tensor import TensorElement, bi_order, kernel_index_set, series_order, xi_map
from .weak import WeakFunction, alpha_basis, character_coordinates, character_weak_function

__all__ = [
    "DualBasisPair",
    "ConstructionCertificate",
    "dual_bases",
    "xi_modular",
    "l_map",
    "numerical_rank",
    "newform_pairs",
    "vanishing_space_small_weight",
    "vanishing_space_large_weight",
    "dimension_report",
    "verify_certificate",
]


def numerical_rank(rows, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int:
    """Rank by two-pass modified Gram-Schmidt, each residual judged against its row norm."""
    mp = ctx.mp
    Q: list = []
    for row in rows:
        v = [mp.mpc(x) for x in row]
        n0 = mp.sqrt(mp.fsum(abs(x) ** 2 for x in v))
        if n0 == 0:
            continue
        for _ in range(2):
            for q in Q:
                h = mp.fsum(mp.conj(a) * b for a, b in zip(q, v))
                v = [b - h * a for a, b in zip(q, v)]
        r = mp.sqrt(mp.fsum(abs(x) ** 2 for x in v))
        if ctx.classify(r, n0, what="Gram-Schmidt residual"):
            Q.append([x / r for x in v])
    return len(Q)


def _condition_number(rows, ctx):
    mp = ctx.mp
    if not rows:
        return mp.mpf(1)
    sv = mp.svd_c(mp.matrix(rows), compute_uv=False)
    sv = [abs(x) for x in sv]
    return max(sv) / min(sv) if min(sv) else mp.inf


@dataclass(frozen=True)
class DualBasisPair:
    """Change of basis between alpha_c and omega_chi at a prime p.

    coords[c][chi] = a_chi(c) with alpha_c = sum a_chi(c) omega_chi;
    tilde[c] and hat[c] map a character xi to the coefficient of omega_xi in
    the dual functions
        tilde alpha_c = sum chi(-1) G(chi) a_chi(c) omega_conj(chi),
        hat alpha_c   = sum G(chi) a_chi(c) omega_conj(chi).
    """

    p: int
    characters: tuple
    coords: tuple
    tilde: tuple
    hat: tuple

    def tilde_function(self, c: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> WeakFunction:
        return _combine(self.p, self.tilde[c], ctx)

    def hat_function(self, c: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> WeakFunction:
        return _combine(self.p, self.hat[c], ctx)


def _combine(p, coeffs: dict, ctx) -> WeakFunction:
    mp = ctx.mp
    beta = [mp.mpc(0)] * (p - 1)
    for chi, a in coeffs.items():
        w = character_weak_function(chi, ctx)
        beta = [x + a * y for x, y in zip(beta, w.beta)]
    return WeakFunction(p, tuple(beta))


def dual_bases(p: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> DualBasisPair:
    return _dual_bases(p, ctx)


_DUAL_CACHE: dict = {}


def _dual_bases(p, ctx):
    key = (p, ctx)
    hit = _DUAL_CACHE.get(key)
    if hit is not None:
        return hit
    chars = tuple(enumerate_characters(p))
    coords = tuple(character_coordinates(a, ctx) for a in alpha_basis(p, ctx))
    if numerical_rank([[row[chi] for chi in chars] for row in coords], ctx) != p - 2:
        raise VerificationError(f"change of basis at p = {p} is singular")
    tilde, hat = [], []
    for row in coords:
        tilde.append({chi.conj(): chi.parity * gauss_sum(chi, ctx) * row[chi] for chi in chars})
        hat.append({chi.conj(): gauss_sum(chi, ctx) * row[chi] for chi in chars})
    out = DualBasisPair(p, chars, coords, tuple(tilde), tuple(hat))
    _DUAL_CACHE.setdefault(key, out)
    return out


def newform_pairs(p1: int, p2: int, k: int) -> list:
    """Admissible (chi, psi): non-principal, chi(-1) psi(-1) = (-1)^k."""
    return [(chi, psi) for chi in enumerate_characters(p1) for psi in enumerate_characters(p2)
            if chi.parity * psi.parity == (-1) ** k]


def xi_modular(c: int, d: int, k: int, p1: int, p2: int,
               ctx: PrecisionContext = DEFAULT_CONTEXT) -> EisensteinCombination:
    """theta_k(tilde alpha_c^(p1) (x) hat alpha_d^(p2); p2 tau) as Eisenstein newforms.

    The coefficient of E_k(chi, psi; p2 tau) is chi(-1) p1 p2 (k-1)!/(-2 pi i)^k a_chi(c) a_psi(d).
    """
    if (c + d - k) % 2:
        raise ValueError(f"parity violation: c + d = {c + d} and k = {k} differ mod 2")
    if not (0 <= c <= p1 - 3 and 0 <= d <= p2 - 3):
        raise ValueError(f"indices must satisfy 0 <= c <= {p1 - 3}, 0 <= d <= {p2 - 3}")
    mp = ctx.mp
    A1, A2 = dual_bases(p1, ctx), dual_bases(p2, ctx)
    const = p1 * p2 * factorial(k - 1) / mp.mpc(0, -2 * mp.pi) ** k
    coeffs = {}
    for chi in A1.characters:
        if chi.parity != (-1) ** (c + 1):
            continue
        for psi in A2.characters:
            if psi.parity != (-1) ** (d + 1):
                continue
            coeffs[(chi, psi)] = chi.parity * const * A1.coords[c][chi] * A2.coords[d][psi]
    return EisensteinCombination.build(k, p1, p2, coeffs, ctx)


def l_map(f: EisensteinCombination, S, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """(-2 pi i)^k p2^(k-1) / ((k-2)! 4 pi^2) (C(k-2, l) i^(1-l) Lambda(f; l+1) p1^l)_{l in S}."""
    mp = ctx.mp
    k = f.weight
    pre = mp.mpc(0, -2 * mp.pi) ** k * mp.mpf(f.p2) ** (k - 1) / (factorial(k - 2) * 4 * mp.pi ** 2)
    return [pre * comb(k - 2, l) * mp.mpc(0, 1) ** (1 - l) * completed_lambda(f, l + 1, ctx) * mp.mpf(f.p1) ** l
            for l in sorted(S)]


def _digest(comb_: EisensteinCombination, ctx, terms: int = 12) -> dict:
    q = comb_.q_expansion(terms, ctx)
    head = [encode_complex(c, PrecisionContext(64)) for c in q.coeffs[1:9]]
    full = "|".join(",".join(encode_complex(c, ctx)) for c in q.coeffs)
    return {"first": head, "terms": terms, "sha256": hashlib.sha256(full.encode()).hexdigest()}


@dataclass
class ConstructionCertificate:
    mode: str
    inputs: dict
    exact: bool
    hypotheses: list
    dimensions: dict
    basis: list  # dicts with label, index, combination, report
    witnesses: list = field(default_factory=list)
    claims: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    precision: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.claims)

    def failed_claims(self) -> list:
        return [c for c in self.claims if not c["passed"]]

    def combinations(self) -> list:
        return [b["combination"] for b in self.basis]

    def to_json(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
        def entry(b):
            return {"label": b["label"], "index": list(b["index"]),
                    "combination": b["combination"].to_json(ctx),
                    "l_values": b["report"].to_json(ctx), "q_digest": b["digest"],
                    **({"l_map": [encode_complex(x, ctx) for x in b["l_map"]]} if "l_map" in b else {})}

        return {
            "schema": SCHEMA_CERT,
            "mode": self.mode,
            "inputs": self.inputs,
            "exactness": "exact-kernel" if self.exact else "subset-only",
            "hypotheses": self.hypotheses,
            "dimensions": self.dimensions,
            "precision": self.precision,
            "basis": [entry(b) for b in self.basis],
            "witnesses": [entry(b) for b in self.witnesses],
            "claims": self.claims,
            "warnings": self.warnings,
            "passed": self.passed,
        }


def _precision_meta(ctx):
    return {"bits": ctx.precision_bits, "vanish_threshold": encode_real(ctx.vanish_threshold, PrecisionContext(64)),
            "rank_threshold": encode_real(ctx.rank_threshold, PrecisionContext(64))}


def _check_primes(p1, p2):
    for name, p in (("p1", p1), ("p2", p2)):
        if not (isinstance(p, int) and p >= 3 and is_prime(p)):
            raise HypothesisError(f"{name} = {p} must be an odd prime")


def _nontrivial_claim(f: EisensteinCombination, label: str, ctx, terms: int = 30) -> dict:
    """Certify f != 0 through a q-coefficient that survives the cancellation between terms."""
    mp = ctx.mp
    q = f.q_expansion(terms, ctx).coeffs
    ref = mp.mpf(0)
    for chi, psi, c in f.terms:
        single = EisensteinCombination.build(f.weight, f.p1, f.p2, {(chi, psi): c}, ctx)
        ref += max(abs(x) for x in single.q_expansion(terms, ctx).coeffs)
    m = max(range(len(q)), key=lambda i: abs(q[i]))
    ok = bool(f.terms) and ctx.classify(q[m], ref, what=f"{label} q-coefficient")
    return {"id": f"{label}:nontrivial", "kind": "nonzero-q-coefficient", "passed": bool(ok),
            "detail": f"|a_{m}| = {mp.nstr(abs(q[m]), 6)}"}


def _element(label, index, f, points, promised, ctx, normalize=True):
    g = f.normalized(ctx) if normalize else f
    rep = l_value_report(g, points, ctx, promised=promised)
    claims = []
    for s, v, sc, van, triv in rep.rows():
        if s in promised:
            claims.append({"id": f"{label}:L({s})=0", "kind": "vanishing", "passed": van,
                           "detail": f"|L| = {ctx.mp.nstr(abs(v), 6)}, scale = {ctx.mp.nstr(sc, 6)}"
                                     + (" (trivial zero)" if triv else "")})
    claims.append(_nontrivial_claim(g, label, ctx))
    return {"label": label, "index": index, "combination": g, "report": rep,
            "digest": _digest(g, ctx)}, claims


def vanishing_space_small_weight(p1: int, p2: int, k: int, S, ctx: PrecisionContext = DEFAULT_CONTEXT,
                                 raise_on_failure: bool = True) -> ConstructionCertificate:
    """Kernel basis and surjectivity witnesses for L(f; l+1) = 0, l in S."""
    _check_primes(p1, p2)
    S = sorted(set(S))
    hyps = [
        {"name": "3 <= k <= min(p1-2, p2-2)", "holds": 3 <= k <= min(p1 - 2, p2 - 2), "kind": "required"},
        {"name": "S subset of {0..k-2}", "holds": all(0 <= s <= k - 2 for s in S), "kind": "required"},
    ]
    for h in hyps:
        if not h["holds"]:
            raise HypothesisError(f"hypothesis violated: {h['name']} (p1={p1}, p2={p2}, k={k}, S={S})")
    mp = ctx.mp
    index_set, exact = kernel_index_set(p1, p2, k, S)
    pairs = newform_pairs(p1, p2, k)
    dim_E = len(pairs)
    points = list(range(1, k))
    promised = [l + 1 for l in S]
    basis, claims = [], []
    for m, n in index_set:
        entry, cl = _element(f"xi({m},{n})", (m, n), xi_modular(m, n, k, p1, p2, ctx), points, promised, ctx)
        entry["l_map"] = l_map(entry["combination"], S, ctx)
        basis.append(entry)
        claims += cl
    witnesses = []
    for l in S:
        f = xi_modular(l, k - 2 - l, k, p1, p2, ctx)
        entry, _ = _element(f"witness({l})", (l, k - 2 - l), f, points, [], ctx, normalize=False)
        entry["l_map"] = l_map(f, S, ctx)
        witnesses.append(entry)
    W = [w["l_map"] for w in witnesses]
    cond = _condition_number(W, ctx)
    unit = all(ctx.classify(W[i][j] - (1 if i == j else 0), 1, what="witness image") is False
               for i in range(len(S)) for j in range(len(S))) if S else True
    claims.append({"id": "witnesses:condition", "kind": "surjectivity", "passed": bool(cond < 1e10),
                   "detail": f"condition number {mp.nstr(cond, 6)}"})
    claims.append({"id": "witnesses:unit-images", "kind": "surjectivity", "passed": unit,
                   "detail": "L-map images of the witnesses are the unit vectors"})
    lrows = [b["l_map"] for b in basis] + W
    rank_L = numerical_rank(lrows, ctx) if S else 0
    claims.append({"id": "exactness:rank", "kind": "exactness", "passed": rank_L == len(S),
                   "detail": f"rank of L-map on kernel basis and witnesses = {rank_L}, |S| = {len(S)}"})
    coeff_rows = [[b["combination"].coefficient(chi, psi, ctx) for chi, psi in pairs] for b in basis + witnesses]
    rank_all = numerical_rank(coeff_rows, ctx)
    claims.append({"id": "exactness:span", "kind": "exactness", "passed": rank_all == dim_E,
                   "detail": f"kernel basis and witnesses span rank {rank_all} of dim {dim_E}"})
    claims.append({"id": "exactness:dimension", "kind": "exactness", "passed": len(basis) + len(S) == dim_E,
                   "detail": f"kernel dim {len(basis)} + |S| {len(S)} vs dim E {dim_E}"})
    cert = ConstructionCertificate(
        mode="small-weight", inputs={"p1": p1, "p2": p2, "k": k, "S": S}, exact=exact, hypotheses=hyps,
        dimensions=dimension_report(p1, p2, k, S=S), basis=basis, witnesses=witnesses, claims=claims,
        precision=_precision_meta(ctx))
    if raise_on_failure and not cert.passed:
        err = VerificationError("self-verification failed: " + ", ".join(c["id"] for c in cert.failed_claims()))
        err.certificate = cert
        raise err
    return cert


def vanishing_space_large_weight(p1: int, p2: int, k: int, l1: int, l2: int,
                                 ctx: PrecisionContext = DEFAULT_CONTEXT,
                                 raise_on_failure: bool = True) -> ConstructionCertificate:
    """Forms from alpha_c (x) alpha_d, c >= l1, d >= l2, vanishing at 1..l1 and k-l2..k-1.

    Hard requirements: odd primes, k >= 3, 0 <= l_i <= p_i - 2. The remaining
    large-weight inequalities are only recorded; the vanishing
    itself follows from the orders of the tensors and is verified numerically.
    """
    _check_primes(p1, p2)
    if k < 3:
        raise HypothesisError(f"hypothesis violated: k >= 3 (k = {k})")
    for name, l, p in (("l1", l1, p1), ("l2", l2, p2)):
        if not 0 <= l <= p - 2:
            raise HypothesisError(f"hypothesis violated: 0 <= {name} <= p - 2 ({name} = {l}, p = {p})")
    hyps = [
        {"name": "max(0, p2-k-1) <= l1", "holds": max(0, p2 - k - 1) <= l1, "kind": "recorded"},
        {"name": "max(0, p1-k-1) <= l2", "holds": max(0, p1 - k - 1) <= l2, "kind": "recorded"},
        {"name": "l1 + l2 <= k-1", "holds": l1 + l2 <= k - 1, "kind": "recorded"},
    ]
    warnings = [f"hypothesis not met: {h['name']}; vanishing still follows from tensor orders and is verified"
                for h in hyps if not h["holds"]]
    idx = [(c, d) for c in range(l1, p1 - 2) for d in range(l2, p2 - 2) if (c + d - k) % 2 == 0]
    if not idx:
        warnings.append("the space is empty for these parameters")
    promised = list(range(1, l1 + 1)) + list(range(k - l2, k))
    promised = sorted(set(s for s in promised if 1 <= s <= k - 1))
    points = list(range(1, k))
    basis, claims = [], []
    T = (p1 - 3) + (p2 - 3)
    for c, d in idx:
        entry, cl = _element(f"xi({c},{d})", (c, d), xi_modular(c, d, k, p1, p2, ctx), points, promised, ctx)
        t = TensorElement.elementary(p1, p2, c, d, ctx)
        bo = bi_order(t, ctx)
        so = series_order(xi_map(t, T, ctx), ctx)
        ok = bo[0] >= l1 and bo[1] >= l2 and tuple(so) == tuple(bo)
        cl.append({"id": f"xi({c},{d}):order", "kind": "order", "passed": ok,
                   "detail": f"tensor order {bo}, series order {so}, required >= ({l1}, {l2})"})
        basis.append(entry)
        claims += cl
    cert = ConstructionCertificate(
        mode="large-weight", inputs={"p1": p1, "p2": p2, "k": k, "l1": l1, "l2": l2}, exact=False,
        hypotheses=hyps, dimensions=dimension_report(p1, p2, k, l1=l1, l2=l2), basis=basis, claims=claims,
        warnings=warnings, precision=_precision_meta(ctx))
    if raise_on_failure and not cert.passed:
        err = VerificationError("self-verification failed: " + ", ".join(c["id"] for c in cert.failed_claims()))
        err.certificate = cert
        raise err
    return cert


def dimension_report(p1: int, p2: int, k: int, S=None, l1: int | None = None, l2: int | None = None) -> dict:
    """Dimension counts for the order filtration, the tensor spaces and the newform space."""
    _check_primes(p1, p2)
    if k < 3:
        raise ValueError("k must be >= 3")
    out = {"dim_E": len(newform_pairs(p1, p2, k)),
           "dim_W_p1": p1 - 2, "dim_W_p2": p2 - 2,
           "dim_tensor_parity": sum(1 for c in range(p1 - 2) for d in range(p2 - 2) if (c + d - k) % 2 == 0)}
    if l1 is not None or l2 is not None:
        l1 = 0 if l1 is None else l1
        l2 = 0 if l2 is None else l2
        if not (0 <= l1 <= p1 - 2 and 0 <= l2 <= p2 - 2):
            raise ValueError("need 0 <= l1 <= p1-2 and 0 <= l2 <= p2-2")
        out["dim_W_p1_ord_ge_l1"] = max(0, p1 - l1 - 2)
        out["dim_W_p2_ord_ge_l2"] = max(0, p2 - l2 - 2)
        out["dim_V"] = max(0, p1 - l1 - 2) * max(0, p2 - l2 - 2)
        out["dim_V_parity"] = sum(1 for c in range(l1, p1 - 2) for d in range(l2, p2 - 2) if (c + d - k) % 2 == 0)
    if S is not None:
        S = sorted(set(S))
        if any(s < 0 or s > k - 2 for s in S):
            raise ValueError(f"S must be a subset of 0..{k - 2}")
        idx, exact = kernel_index_set(p1, p2, k, S)
        out["dim_E_S"] = out["dim_E"] - len(S)
        out["kernel_index_count"] = len(idx)
        out["exact"] = exact
    return out


def verify_certificate(doc: dict, ctx: PrecisionContext = DEFAULT_CONTEXT, extra_points=()) -> dict:
    """Re-evaluate every L-claim of a certificate document at the given precision."""
    if doc.get("schema") != SCHEMA_CERT:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    k = int(doc["inputs"]["k"])
    if doc["mode"] == "small-weight":
        promised = [s + 1 for s in doc["inputs"]["S"]]
    else:
        l1, l2 = int(doc["inputs"]["l1"]), int(doc["inputs"]["l2"])
        promised = sorted(set(range(1, l1 + 1)) | set(range(k - l2, k)))
    extra = sorted(set(int(s) for s in extra_points) - set(promised))
    results, ok = [], True
    for b in doc["basis"]:
        f = EisensteinCombination.from_json(b["combination"], ctx)
        rep = l_value_report(f, promised + extra, ctx, promised=promised)
        for s, v, sc, van, triv in rep.rows():
            row = {"element": b["label"], "s": s, "value": v, "scale": sc, "vanished": van, "trivial": triv,
                   "promised": s in promised}
            if s in promised and not van:
                ok = False
            results.append(row)
    return {"passed": ok, "rows": results}
