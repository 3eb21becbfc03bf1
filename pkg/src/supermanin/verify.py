"""Cross-construction identity suites over a seeded fixture family."""

from __future__ import annotations

import random

from .algebra import (
    algebra_X,
    black,
    dual_identification,
    graded_tensor,
    koszul_dual,
    tensor,
    transport,
    white,
)
from .fixtures import fixture_matrices, fixture_pairs, idempotent_pairs, random_idempotent
from .manin import (
    check_comonoid,
    coend,
    cohom_bullet,
    cohom_preimage,
    fm_homomorphism,
    is_manin,
    swap_iso_check,
    universal_manin_algebra,
    xi_homomorphism,
)
from .quantum import check_multiplicative, universal_representation


def koszul_identities(a, b) -> dict[str, bool]:
    P = dual_identification(a.format, b.format)
    da, db = koszul_dual(a), koszul_dual(b)
    return {
        "dual_white_is_black": transport(koszul_dual(white(a, b)), P) == black(da, db),
        "dual_black_is_white": transport(koszul_dual(black(a, b)), P) == white(da, db),
        "dual_tensor_is_graded_tensor": koszul_dual(tensor(a, b)) == graded_tensor(da, db),
        "dual_graded_tensor_is_tensor": koszul_dual(graded_tensor(a, b)) == tensor(da, db),
        "double_dual": koszul_dual(da) == a and koszul_dual(db) == b,
    }


def cohom_identities(a, b) -> dict[str, bool]:
    return {
        "cohom_bullet_is_preimage": cohom_bullet(b, a) == cohom_preimage(b, a),
        "cohom_swap_iso": swap_iso_check(a, b),
    }


def universal_identity(B, Bt) -> bool:
    return universal_manin_algebra(B, Bt).algebra == cohom_bullet(algebra_X(Bt), algebra_X(B))


def manin_agreement(M, B, Bt) -> bool:
    verdicts = {bool(is_manin(M, B, Bt)), fm_homomorphism(M, B, Bt), xi_homomorphism(M, B, Bt)}
    return len(verdicts) == 1


def coend_axioms(B) -> bool:
    c = coend(B, verify=False)
    report = check_comonoid(c.algebra, c.comult, c.counit)
    rep = universal_representation(c)
    return all(report.values()) and check_multiplicative(rep.M, rep.host)


def run_verification(seed: int = 42, count: int = 50, max_dim: int = 2) -> dict:
    """Run every identity suite; returns per-identity pass/fail counts."""
    results: dict[str, dict] = {}

    def record(name, index, ok):
        r = results.setdefault(name, {"passed": 0, "failed": 0, "failures": []})
        if ok:
            r["passed"] += 1
        else:
            r["failed"] += 1
            r["failures"].append(index)

    for n, (a, b) in enumerate(fixture_pairs(seed, count, max_dim)):
        for name, ok in koszul_identities(a, b).items():
            record(name, n, ok)
        for name, ok in cohom_identities(a, b).items():
            record(name, n, ok)
    for n, (B, Bt) in enumerate(idempotent_pairs(seed + 1, count, max_dim)):
        record("universal_is_cohom", n, universal_identity(B, Bt))
    for n, (M, B, Bt) in enumerate(fixture_matrices(seed + 2, count, max_dim)):
        record("manin_three_way_agreement", n, manin_agreement(M, B, Bt))
    rng = random.Random(seed + 3)
    for n in range(count):
        k = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, max_dim)))
        record("coend_comonoid", n, coend_axioms(random_idempotent(rng, k)))
    return {
        "seed": seed,
        "fixtures": count,
        "max_dim": max_dim,
        "identities": results,
        "ok": all(r["failed"] == 0 for r in results.values()),
    }
