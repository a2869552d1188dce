"""Full-size acceptance campaigns. Run with `uv run python scripts/run_acceptance.py`."""

import asyncio
import sys
import time
from collections.abc import Callable
from typing import TypedDict

import numpy as np
from tqdm.asyncio import tqdm_asyncio

from luequiv.bloch.models import DensityMatrix
from luequiv.bloch.pauli import from_bloch2, to_bloch2, to_bloch3
from luequiv.config import settings
from luequiv.equivalence.double_cover import so3_to_su2, su2_to_so3
from luequiv.equivalence.models import VerdictKind
from luequiv.equivalence.three_qubit import coverage_compare, decide3
from luequiv.equivalence.two_qubit import decide2
from luequiv.families.builder import build_families2
from luequiv.invariants.fingerprint import fingerprint2, fingerprint3, reconstruct_grams2
from luequiv.statekit.generators import (
    MIN_COUNTEREXAMPLE_TRIPLE,
    degenerate_case2,
    haar_su2,
    lps_blind_state3,
    orbit_pair,
    paper_counterexample,
    random_density,
)
from luequiv.statekit.models import DegenerateCase
from luequiv.statekit.oracle import oracle_min_distance


class Campaign(TypedDict):
    name: str
    trials: int
    check: Callable[[int], bool]


def _orbit_source2(seed: int) -> DensityMatrix:
    match seed % 4:
        case 0:
            return random_density(4, seed)
        case 1:
            return random_density(4, seed, rank=1 + seed % 3)
        case 2:
            return from_bloch2(degenerate_case2(DegenerateCase.BellDiagonal, seed)).density()
        case _:
            cases = list(DegenerateCase)
            return from_bloch2(degenerate_case2(cases[seed % len(cases)], seed)).density()


def orbit_soundness2(seed: int) -> bool:
    rho = _orbit_source2(seed)
    image, _ = orbit_pair(rho, seed + 1)
    verdict = decide2(to_bloch2(rho), to_bloch2(image), rho_a=rho, rho_b=image)
    return (
        verdict.kind is VerdictKind.Equivalent
        and verdict.witness is not None
        and verdict.witness.density_residual is not None
        and verdict.witness.density_residual <= 1e-8
    )


def counterexample(seed: int) -> bool:
    first, second = paper_counterexample(seed)
    fa, fb = fingerprint2(first), fingerprint2(second)
    same_l = np.allclose(fa.L, fb.L, atol=1e-10, rtol=0)
    same_rest = np.allclose(fa.tr_alpha, fb.tr_alpha, atol=1e-10, rtol=0) and abs(fa.det_T12 - fb.det_T12) <= 1e-10
    assert fa.triple_mu is not None and fb.triple_mu is not None
    opposite = abs(fa.triple_mu + fb.triple_mu) <= 1e-10 and abs(fa.triple_mu) >= MIN_COUNTEREXAMPLE_TRIPLE
    verdict = decide2(first, second)
    return (
        same_l
        and same_rest
        and opposite
        and verdict.kind is VerdictKind.NotEquivalent
        and verdict.certificate is not None
        and verdict.certificate.field == "triple_mu"
    )


def invariance(seed: int) -> bool:
    if seed % 2:
        rho = random_density(4, seed)
        image, _ = orbit_pair(rho, seed + 1)
        fa, fb = fingerprint2(to_bloch2(rho)), fingerprint2(to_bloch2(image))
        pairs = [(fa.L, fb.L), (fa.tr_alpha, fb.tr_alpha), ([fa.det_T12, fa.inv_I], [fb.det_T12, fb.inv_I])]
        if fa.triple_mu is not None and fb.triple_mu is not None:
            pairs.append(([fa.triple_mu], [fb.triple_mu]))
        return all(np.allclose(x, y, atol=1e-9, rtol=0) for x, y in pairs)
    rho = random_density(8, seed)
    image, _ = orbit_pair(rho, seed + 1)
    fa, fb = fingerprint3(to_bloch3(rho)), fingerprint3(to_bloch3(image))
    return all(
        fa.gram(i).shape == fb.gram(i).shape and np.allclose(fa.gram(i), fb.gram(i), atol=1e-9, rtol=0)
        for i in (1, 2, 3)
    )


def hamilton_cayley(seed: int) -> bool:
    b = to_bloch2(random_density(4, seed))
    s1, s2 = build_families2(b)
    gram_mu, gram_nu = reconstruct_grams2(fingerprint2(b))
    return bool(
        np.max(np.abs(gram_mu - s1.gram())) <= 1e-9 and np.max(np.abs(gram_nu - s2.gram())) <= 1e-9
    )


def degenerate_orbit(seed: int) -> bool:
    cases = list(DegenerateCase)
    b = degenerate_case2(cases[seed % len(cases)], seed)
    rho = from_bloch2(b).density()
    image, _ = orbit_pair(rho, seed + 1)
    verdict = decide2(b, to_bloch2(image), rho_a=rho, rho_b=image)
    return verdict.kind is VerdictKind.Equivalent


def discrimination(seed: int) -> bool:
    a = to_bloch2(random_density(4, 2 * seed))
    b = to_bloch2(random_density(4, 2 * seed + 1))
    return decide2(a, b).kind is VerdictKind.NotEquivalent


def orbit_soundness3(seed: int) -> bool:
    rho = random_density(8, seed)
    image, _ = orbit_pair(rho, seed + 1)
    verdict = decide3(to_bloch3(rho), to_bloch3(image), rho_a=rho, rho_b=image)
    return (
        verdict.kind is VerdictKind.Equivalent
        and verdict.witness is not None
        and verdict.witness.residual <= 1e-8
        and verdict.witness.density_residual is not None
        and verdict.witness.density_residual <= 1e-8
    )


def coverage_blind(seed: int) -> bool:
    record = coverage_compare(lps_blind_state3(seed))
    return record.theorem3_applicable and not record.lps_applicable


def coverage_converse(seed: int) -> bool:
    record = coverage_compare(to_bloch3(random_density(8, seed)))
    return not (record.lps_applicable and not record.theorem3_applicable)


def double_cover(seed: int) -> bool:
    u, v = haar_su2(2 * seed), haar_su2(2 * seed + 1)
    lifted = so3_to_su2(su2_to_so3(u))
    round_trip = min(np.max(np.abs(lifted - u)), np.max(np.abs(lifted + u))) <= 1e-9
    homomorphism = np.max(np.abs(su2_to_so3(u @ v) - su2_to_so3(u) @ su2_to_so3(v))) <= 1e-9
    return bool(round_trip and homomorphism)


def oracle_equivalent(seed: int) -> bool:
    rho = random_density(4, seed)
    image, _ = orbit_pair(rho, seed + 1)
    return oracle_min_distance(rho, image, restarts=100, seed=seed).min_distance <= 1e-6


def oracle_inequivalent(seed: int) -> bool:
    rho, sigma = random_density(4, 2 * seed), random_density(4, 2 * seed + 1)
    bound = float(np.linalg.norm(np.linalg.eigvalsh(rho.matrix) - np.linalg.eigvalsh(sigma.matrix)))
    return oracle_min_distance(rho, sigma, restarts=20, seed=seed).min_distance >= bound - 1e-9


CAMPAIGNS: list[Campaign] = [
    {"name": "orbit soundness, two qubits", "trials": 1000, "check": orbit_soundness2},
    {"name": "counterexample resamplings", "trials": 100, "check": counterexample},
    {"name": "invariance under LU", "trials": 1000, "check": invariance},
    {"name": "Hamilton-Cayley reduction", "trials": 1000, "check": hamilton_cayley},
    {"name": "degenerate singular values", "trials": 200 * len(DegenerateCase), "check": degenerate_orbit},
    {"name": "discrimination", "trials": 1000, "check": discrimination},
    {"name": "orbit soundness, three qubits", "trials": 200, "check": orbit_soundness3},
    {"name": "coverage beyond det ΛΘ ≠ 0", "trials": 20, "check": coverage_blind},
    {"name": "no converse coverage", "trials": 200, "check": coverage_converse},
    {"name": "double cover", "trials": 10_000, "check": double_cover},
    {"name": "oracle on equivalent pairs", "trials": 50, "check": oracle_equivalent},
    {"name": "oracle on inequivalent pairs", "trials": 50, "check": oracle_inequivalent},
]


async def run_check_rate_limited(
    check: Callable[[int], bool], seed: int, semaphore: asyncio.Semaphore
) -> bool:
    async with semaphore:
        return await asyncio.to_thread(check, seed)


async def main() -> None:
    max_concurrency = settings.CLASSIFY_CONCURRENCY
    semaphore = asyncio.Semaphore(max_concurrency)
    failures: dict[str, list[int]] = {}

    for campaign in CAMPAIGNS:
        started = time.perf_counter()
        tasks = [
            run_check_rate_limited(campaign["check"], seed, semaphore)
            for seed in range(campaign["trials"])
        ]
        results = await tqdm_asyncio.gather(*tasks, desc=campaign["name"])
        failed = [seed for seed, passed in enumerate(results) if not passed]
        elapsed = time.perf_counter() - started
        print(f"{campaign['name']}: {len(results) - len(failed)}/{len(results)} passed in {elapsed:.1f}s")
        if failed:
            failures[campaign["name"]] = failed

    for name, seeds in failures.items():
        print(f"FAILED {name}: seeds {seeds[:20]}")
    print("All campaigns completed")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    asyncio.run(main())
