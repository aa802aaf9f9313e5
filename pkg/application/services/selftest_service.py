"""
MPQ Selftest Service

acceptance 기준 12개를 데스크 규모로 실행하고 selftest_report.json 기록
- 무차원 단위 (c = ħ = ε₀ = 1, ω = k₀ = 1)
- 난수는 (seed, 기준 번호) 로 고정 → 같은 seed 면 보고서 바이트 동일
- 보고서에는 시간/경로 등 실행마다 달라지는 값을 넣지 않음
"""
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from config.settings import Settings, get_settings
from core import __version__
from core.enums import ModeFamily, Polarization, PropagationModel, TaperWindow, UnitSystem
from core.exceptions import MPQException, SelftestFailure
from core.models import (
    CriterionResult,
    DispersionRunConfig,
    ModeSpec,
    PhysicalConstants,
    QuadratureSpec,
    SelftestReport,
    SelftestRunConfig,
)
from domain.entities.envelope import ScalarEnvelope
from domain.entities.grid import TransverseGrid
from domain.modes.operations import gaussian_beam, get_mode_family, make_mode, rayleigh_range
from domain.physics.dispersion import (
    dirac_jacobian,
    dispersion_omega,
    frequency_arrays,
    q_for_theta,
    vartheta_of_theta,
    vartheta_series,
)
from domain.physics.kernels import (
    fresnel_kernel,
    fresnel_distance,
    narrow_beam_discrepancy,
    orthogonality_integral,
    orthogonality_weight,
    relative_kernel_error,
    scalar_paraxial_green,
    weighted_pairing_bruteforce,
)
from domain.physics.polarization import polarization_field
from domain.propagation.operations import (
    assemble_monochromatic_field,
    assemble_via_plane_waves,
    get_propagator,
    paraxial_residual,
    propagated_planes,
)
from application.services.dispersion_service import DispersionService
from infrastructure.io.field_file import decode_field, encode_field
from infrastructure.io.table_writer import CSV_FLOAT_FORMAT, to_jsonable, write_json
from utils.beam_metrics import relative_l2, second_moment_width, winding_number
from utils.logger import get_logger
from utils.spectral import ifft2c

logger = get_logger(__name__)

REPORT_NAME = "selftest_report.json"

# ===== 허용치 =====
DISPERSION_TOL = 1e-12
JACOBIAN_TOL = 1e-8
POLARIZATION_TOL = 1e-12
RESIDUAL_RATIO = (3.5, 4.5)
GAUSSIAN_TOL = 1e-4
DIVERGENCE_TOL = 0.01
FRESNEL_FINAL_TOL = 5e-3
NARROW_RATIO = (2.5, 6.0)
NARROW_N_Q = 64
NARROW_FRESNEL_PHASE = np.pi / 2
COINCIDENCE_TOL = 1e-3
PARSEVAL_TOL = 1e-6
UNITARY_TOL = 1e-12
ROUTE_TOL = 1e-10
ORTHONORMAL_TOL = 1e-8

MODELS = (PropagationModel.EXACT, PropagationModel.PARAXIAL)


def random_envelope(rng: np.random.Generator, grid: TransverseGrid, omega: float,
                    q_limit: float) -> ScalarEnvelope:
    """
    대역 제한 난수 포락선 (|q| < q_limit 에만 스펙트럼, 단위 노름)

    q_limit 를 Nyquist 절반과 √2·k₀ 아래로 잡으면 전파 가드를 통과
    """
    spectrum = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    spectrum = spectrum * (np.sqrt(grid.q_squared()) < q_limit)
    envelope = ScalarEnvelope(grid=grid, samples=ifft2c(spectrum), omega=omega)
    return envelope.with_samples(envelope.samples / envelope.norm())


class SelftestService:
    """
    acceptance 기준 실행 서비스

    각 기준은 CriterionResult 하나를 반환하고, 예외가 나면 실패로 기록
    """

    def __init__(self, settings: Optional[Settings] = None):
        base = settings if settings is not None else get_settings()
        self.settings = base.model_copy(update={"dimensionless_units": True, "aliasing_policy": "raise"})
        self.constants = PhysicalConstants.dimensionless()
        self.omega = 1.0
        self.seed = base.selftest_seed

        self.criteria: List[Tuple[int, str, Callable[[np.random.Generator], Tuple[bool, Dict, Dict]]]] = [
            (1, "dispersion_identities", self._dispersion_identities),
            (2, "divergence_series", self._divergence_series),
            (3, "polarization_basis", self._polarization_basis),
            (4, "paraxial_residual_convergence", self._paraxial_residual_convergence),
            (5, "gaussian_beam_oracle", self._gaussian_beam_oracle),
            (6, "fresnel_oracle", self._fresnel_oracle),
            (7, "narrow_beam_convergence", self._narrow_beam_convergence),
            (8, "quasi_orthogonality", self._quasi_orthogonality),
            (9, "propagation_unitarity", self._propagation_unitarity),
            (10, "route_consistency", self._route_consistency),
            (11, "mode_algebra", self._mode_algebra),
            (12, "determinism", self._determinism),
        ]

    # ===== 실행 =====
    def run(self, config: Optional[SelftestRunConfig] = None) -> SelftestReport:
        """모든 기준 실행 → 보고서"""
        seed = config.seed if config is not None and config.seed is not None else self.seed
        report = SelftestReport(version=__version__, seed=seed, units=UnitSystem.DIMENSIONLESS.value)

        for index, name, check in self.criteria:
            rng = np.random.default_rng([seed, index])
            try:
                passed, measured, expected = check(rng)
                message = "" if passed else "측정값이 허용 범위를 벗어났습니다"
            except MPQException as e:
                passed, measured, expected = False, {}, {}
                message = f"{type(e).__name__}: {e.message}"
            result = CriterionResult(
                index=index,
                name=name,
                passed=bool(passed),
                measured=to_jsonable(measured),
                expected=to_jsonable(expected),
                message=message,
            )
            report.criteria.append(result)
            level = "INFO" if passed else "ERROR"
            logger.log(level, f"selftest [{index:2d}] {name}: {'PASS' if passed else 'FAIL'} {result.measured}")

        return report

    def run_selftest(self, config: SelftestRunConfig, output_dir: Path) -> List[str]:
        """
        selftest 명령: selftest_report.json

        Raises:
            SelftestFailure: 실패한 기준이 있음 (보고서는 먼저 기록)
        """
        report = self.run(config)
        write_json(Path(output_dir) / REPORT_NAME, report.model_dump())
        if not report.passed:
            failed = [c.name for c in report.failures]
            raise SelftestFailure(f"selftest 실패: {len(failed)}개 기준", {"failed": failed})
        logger.info(f"selftest 통과 | {len(report.criteria)}개 기준")
        return [REPORT_NAME]

    # ===== 공통 헬퍼 =====
    def _propagator(self, model: PropagationModel):
        return get_propagator(model, self.constants, self.settings)

    def _random_envelope(self, rng: np.random.Generator) -> ScalarEnvelope:
        grid = TransverseGrid.square(64, 1.0)
        return random_envelope(rng, grid, self.omega, q_limit=1.0)

    # ===== 1. 분산 관계 =====
    def _dispersion_identities(self, rng: np.random.Generator):
        c = self.constants.c
        q = rng.uniform(1e-6, 10.0, 10_000)
        omega = rng.uniform(0.1, 10.0, 10_000)
        theta, omega0 = frequency_arrays(q, omega, self.constants)

        dispersion_error = np.max(np.abs(omega - (omega0 - q ** 2 * c ** 2 / (2.0 * omega0))) / omega)
        theta_error = np.max(np.abs(omega0 / c * theta * np.sqrt(2.0) - q) / q)

        k0 = omega0 / c
        h = 1e-5 * k0
        slope = (dispersion_omega(k0 + h, q, self.constants) - dispersion_omega(k0 - h, q, self.constants)) / (2.0 * h)
        jacobian = dirac_jacobian(q, omega, self.constants)
        jacobian_error = np.max(np.abs(jacobian - c / slope) / jacobian)

        measured = {
            "dispersion_error": float(dispersion_error),
            "theta_error": float(theta_error),
            "jacobian_error": float(jacobian_error),
        }
        expected = {"identity_max": DISPERSION_TOL, "jacobian_max": JACOBIAN_TOL}
        passed = (dispersion_error <= DISPERSION_TOL and theta_error <= DISPERSION_TOL
                  and jacobian_error <= JACOBIAN_TOL)
        return passed, measured, expected

    # ===== 2. 발산각 급수 =====
    def _divergence_series(self, rng: np.random.Generator):
        def scaled_remainder(theta: np.ndarray) -> np.ndarray:
            exact = np.asarray(vartheta_of_theta(theta)) * np.sqrt(2.0)
            series = np.asarray(vartheta_series(theta)) * np.sqrt(2.0)
            return np.abs(exact - series) / theta ** 5

        fit = np.geomspace(1e-3, 0.05, 200)
        constant = float(np.max(scaled_remainder(fit)))
        beyond = np.linspace(0.05, 0.3, 200)
        worst = float(np.max(scaled_remainder(beyond)))
        measured = {"fitted_constant": constant, "worst_ratio_to_0.3": worst}
        expected = {"worst_ratio_max": constant, "leading_coefficient": 2.0 / 15.0}
        return worst <= constant, measured, expected

    # ===== 3. 편광 기저 =====
    def _polarization_basis(self, rng: np.random.Generator):
        phi = rng.uniform(0.0, 2.0 * np.pi, 10_000)
        vartheta = rng.uniform(0.0, 1.0, 10_000)
        qx, qy = vartheta * np.cos(phi), vartheta * np.sin(phi)

        k = np.stack([np.sqrt(2.0) * qx, np.sqrt(2.0) * qy, 1.0 - vartheta ** 2])
        k_hat = k / np.linalg.norm(k, axis=0)
        eps1 = polarization_field(qx, qy, vartheta, Polarization.FIRST)
        eps2 = polarization_field(qx, qy, vartheta, Polarization.SECOND)

        transversality = max(np.max(np.abs(np.sum(eps1 * k_hat, axis=0))),
                             np.max(np.abs(np.sum(eps2 * k_hat, axis=0))))
        normalization = max(np.max(np.abs(np.linalg.norm(eps1, axis=0) - 1.0)),
                            np.max(np.abs(np.linalg.norm(eps2, axis=0) - 1.0)))
        orthogonality = np.max(np.abs(np.sum(eps1 * eps2, axis=0)))
        handedness = np.max(np.abs(np.cross(eps1, eps2, axis=0) - k_hat))

        measured = {
            "transversality": float(transversality),
            "normalization": float(normalization),
            "orthogonality": float(orthogonality),
            "handedness": float(handedness),
        }
        passed = max(measured.values()) <= POLARIZATION_TOL
        return passed, measured, {"max": POLARIZATION_TOL}

    # ===== 4. 근축 잔차 O(h²) =====
    def _paraxial_residual_convergence(self, rng: np.random.Generator):
        w0, span, z_center = 20.0, 256.0, 100.0
        residuals = []
        for dx, h in ((2.0, 8.0), (1.0, 4.0), (0.5, 2.0)):
            grid = TransverseGrid.square(int(round(span / dx)), dx)
            mode = make_mode(ModeSpec(family=ModeFamily.GAUSSIAN, w0=w0, omega=self.omega), grid)
            planes = propagated_planes(mode, z_center, h, PropagationModel.PARAXIAL, self.constants, self.settings)
            residuals.append(paraxial_residual(planes, self.omega / self.constants.c))

        ratios = [residuals[0] / residuals[1], residuals[1] / residuals[2]]
        low, high = RESIDUAL_RATIO
        measured = {"residuals": residuals, "ratios": ratios}
        return all(low <= r <= high for r in ratios), measured, {"ratio_range": list(RESIDUAL_RATIO)}

    # ===== 5. Gaussian 빔 오라클 =====
    def _gaussian_beam_oracle(self, rng: np.random.Generator):
        k0 = self.omega / self.constants.c
        w0 = 10.0
        z_r = rayleigh_range(w0, k0)
        grid = TransverseGrid.square(512, w0 / 8.0)
        mode = make_mode(ModeSpec(family=ModeFamily.GAUSSIAN, w0=w0, omega=self.omega), grid)
        propagator = self._propagator(PropagationModel.PARAXIAL)
        center = (grid.ny // 2, grid.nx // 2)
        axis0 = mode.samples[center]

        errors = {"width": 0.0, "amplitude": 0.0, "gouy": 0.0, "field_l2": 0.0}
        for z in (0.5 * z_r, z_r, 2.0 * z_r):
            field = propagator.propagate(mode, z)
            ratio = z / z_r
            width = w0 * np.sqrt(1.0 + ratio ** 2)
            gouy = -np.arctan(ratio)
            on_axis = field.samples[center] / axis0
            errors["width"] = max(errors["width"], abs(second_moment_width(field) / width - 1.0))
            errors["amplitude"] = max(errors["amplitude"], abs(abs(on_axis) * np.sqrt(1.0 + ratio ** 2) - 1.0))
            errors["gouy"] = max(errors["gouy"], abs(np.angle(on_axis) / gouy - 1.0))
            reference = gaussian_beam(grid, w0, self.omega, z, self.constants)
            errors["field_l2"] = max(errors["field_l2"], relative_l2(field, reference))

        # 원거리 발산 반각
        w_far = 20.0
        far_grid = TransverseGrid.square(512, w_far / 4.0)
        z_far = 20.0 * rayleigh_range(w_far, k0)
        start = gaussian_beam(far_grid, w_far, self.omega, 0.0, self.constants)
        far = propagator.propagate(start, z_far)
        half_angle = second_moment_width(far) / z_far
        divergence_error = abs(half_angle / (2.0 / (k0 * w_far)) - 1.0)

        measured = {**{k: float(v) for k, v in errors.items()}, "divergence_error": float(divergence_error)}
        expected = {"relative_max": GAUSSIAN_TOL, "divergence_max": DIVERGENCE_TOL}
        passed = max(errors.values()) <= GAUSSIAN_TOL and divergence_error <= DIVERGENCE_TOL
        return passed, measured, expected

    # ===== 6. Fresnel 오라클 =====
    def _fresnel_errors(self, points, quad: QuadratureSpec) -> float:
        values = [scalar_paraxial_green(x, z, (0.0, 0.0), self.omega, quad, self.constants, self.settings)
                  for x, z in points]
        references = [fresnel_kernel(x, z, (0.0, 0.0), self.omega, self.constants) for x, z in points]
        return relative_kernel_error(values, references)

    def _fresnel_oracle(self, rng: np.random.Generator):
        offsets = rng.uniform(-40.0, 40.0, (10, 2))
        distances = rng.uniform(350.0, 450.0, 10)
        points = [((float(dx), float(dy)), float(z)) for (dx, dy), z in zip(offsets, distances)]

        by_q_max = [self._fresnel_errors(points, QuadratureSpec(q_max=q, n_q=512, window=TaperWindow.COSINE))
                    for q in (0.4, 0.6, 0.8)]
        by_n_q = [self._fresnel_errors(points, QuadratureSpec(q_max=0.8, n_q=n, window=TaperWindow.COSINE))
                  for n in (16, 64, 512)]

        decreasing_q = all(b < a for a, b in zip(by_q_max, by_q_max[1:]))
        finest_best = all(by_n_q[-1] < e for e in by_n_q[:-1])
        final = by_q_max[-1]
        measured = {"errors_by_q_max": by_q_max, "errors_by_n_q": by_n_q, "final": final}
        expected = {"final_max": FRESNEL_FINAL_TOL, "q_max": [0.4, 0.6, 0.8], "n_q": [16, 64, 512]}
        return decreasing_q and finest_best and final < FRESNEL_FINAL_TOL, measured, expected

    # ===== 7. 협폭 빔 극한 =====
    def _narrow_ladder(self, thetas, retarded: bool) -> List[float]:
        discrepancies = []
        for theta in thetas:
            z = 0.0
            if retarded:
                q_max = q_for_theta(theta, self.omega, self.constants)
                z = fresnel_distance(q_max, self.omega, NARROW_FRESNEL_PHASE, self.constants)
            discrepancies.append(narrow_beam_discrepancy(
                theta, self.omega, n_q=NARROW_N_Q, polarization=Polarization.SECOND,
                z=z, t=z / self.constants.c, window=TaperWindow.NONE,
                constants=self.constants, settings=self.settings,
            ))
        return discrepancies

    def _narrow_beam_convergence(self, rng: np.random.Generator):
        thetas = (0.2, 0.1, 0.05)
        low, high = NARROW_RATIO
        measured = {"Theta_max": list(thetas)}
        passed = True
        for label, retarded in (("waist", False), ("retarded", True)):
            discrepancies = self._narrow_ladder(thetas, retarded)
            ratios = [discrepancies[0] / discrepancies[1], discrepancies[1] / discrepancies[2]]
            decreasing = discrepancies[0] > discrepancies[1] > discrepancies[2]
            passed = passed and decreasing and all(low <= r <= high for r in ratios)
            measured[label] = {"discrepancies": discrepancies, "ratios": ratios}
        expected = {"ratio_range": list(NARROW_RATIO), "n_q": NARROW_N_Q, "window": TaperWindow.NONE.value,
                    "edge_fresnel_phase": NARROW_FRESNEL_PHASE}
        return passed, measured, expected

    # ===== 8. 준직교성 =====
    def _quasi_orthogonality(self, rng: np.random.Generator):
        weight_error = abs(orthogonality_weight(0.0, self.omega, self.constants) - 1.0)

        narrow = QuadratureSpec(q_max=0.01 * self.omega / self.constants.c, n_q=1024)
        coincident = orthogonality_integral((0.0, 0.0), (0.0, 0.0), self.omega, narrow,
                                            constants=self.constants, settings=self.settings)
        reference = narrow.q_max ** 2 / (4.0 * np.pi)
        coincidence_error = abs(coincident.real / reference - 1.0)

        quad = QuadratureSpec(q_max=0.5, n_q=64)
        spacing = np.pi / quad.q_max
        x1, x2 = (0.0, 0.0), (0.3 * spacing, 0.1 * spacing)
        spectral = orthogonality_integral(x1, x2, self.omega, quad, constants=self.constants, settings=self.settings)
        spatial = weighted_pairing_bruteforce(x1, x2, self.omega, quad, Polarization.FIRST,
                                             constants=self.constants, settings=self.settings)
        crossed = weighted_pairing_bruteforce(x1, x2, self.omega, quad, Polarization.FIRST, Polarization.SECOND,
                                              constants=self.constants, settings=self.settings)
        parseval_error = abs(spatial - spectral) / abs(spectral)
        cross_ratio = abs(crossed) / abs(spectral)

        measured = {
            "weight_at_origin_error": float(weight_error),
            "coincidence_error": float(coincidence_error),
            "parseval_error": float(parseval_error),
            "cross_polarization_ratio": float(cross_ratio),
        }
        expected = {"coincidence_max": COINCIDENCE_TOL, "parseval_max": PARSEVAL_TOL}
        passed = (weight_error <= 1e-15 and coincidence_error <= COINCIDENCE_TOL
                  and parseval_error <= PARSEVAL_TOL and cross_ratio <= PARSEVAL_TOL)
        return passed, measured, expected

    # ===== 9. 유니터리성 / 합성 / 가역성 =====
    def _propagation_unitarity(self, rng: np.random.Generator):
        envelope = self._random_envelope(rng)
        steps = rng.uniform(-50.0, 50.0, 5)
        measured = {}
        for model in MODELS:
            propagator = self._propagator(model)
            unitarity = 0.0
            current = envelope
            for dz in steps:
                following = propagator.propagate(current, float(dz))
                unitarity = max(unitarity, abs(following.norm() / current.norm() - 1.0))
                current = following
            direct = propagator.propagate(envelope, float(np.sum(steps)))
            back = propagator.propagate(propagator.propagate(envelope, float(steps[0])), -float(steps[0]))
            measured[model.value] = {
                "unitarity": float(unitarity),
                "composition": relative_l2(current, direct),
                "reversibility": relative_l2(back, envelope),
            }
        worst = max(v for entry in measured.values() for v in entry.values())
        return worst <= UNITARY_TOL, measured, {"max": UNITARY_TOL}

    # ===== 10. 조립 경로 일치 =====
    def _route_consistency(self, rng: np.random.Generator):
        envelope = self._random_envelope(rng)
        vector = self._propagator(PropagationModel.EXACT).propagate(envelope, 0.0, Polarization.FIRST)
        z, t = float(rng.uniform(0.0, 10.0)), float(rng.uniform(0.0, 10.0))
        errors = []
        for field in (envelope, vector):
            direct = assemble_monochromatic_field(field, self.omega, z, t, self.constants)
            plane_waves = assemble_via_plane_waves(field, self.omega, z, t, self.constants)
            errors.append(relative_l2(plane_waves, direct))
        measured = {"scalar": errors[0], "vector": errors[1]}
        return max(errors) <= ROUTE_TOL, measured, {"max": ROUTE_TOL}

    # ===== 11. 모드 대수 =====
    def _mode_algebra(self, rng: np.random.Generator):
        grid = TransverseGrid.square(128, 0.125)
        gram_errors = {}
        for family in (ModeFamily.HERMITE_GAUSSIAN, ModeFamily.LAGUERRE_GAUSSIAN):
            basis = get_mode_family(family, 1.0).basis(grid, 4)
            matrix = np.stack([samples.ravel() for _, samples in basis])
            gram = np.conj(matrix) @ matrix.T * grid.cell_area
            gram_errors[family.value] = float(np.max(np.abs(gram - np.eye(len(basis)))))

        w0 = 10.0
        k0 = self.omega / self.constants.c
        z_r = rayleigh_range(w0, k0)
        vortex_grid = TransverseGrid.square(256, w0 / 8.0)
        windings = {}
        expected_windings = {}
        for p, l in ((0, 2), (1, -1)):
            spec = ModeSpec(family=ModeFamily.LAGUERRE_GAUSSIAN, w0=w0, omega=self.omega, p=p, l=l)
            mode = make_mode(spec, vortex_grid)
            for model in MODELS:
                propagator = self._propagator(model)
                found = []
                for z in (0.5 * z_r, z_r, 2.0 * z_r):
                    radius = w0 * np.sqrt(1.0 + (z / z_r) ** 2) * (0.5 if p else 1.0)
                    found.append(winding_number(propagator.propagate(mode, z), radius))
                key = f"LG({p},{l})/{model.value}"
                windings[key] = found
                expected_windings[key] = [l] * 3

        measured = {"gram_error": gram_errors, "windings": windings}
        expected = {"gram_max": ORTHONORMAL_TOL, "windings": expected_windings}
        passed = max(gram_errors.values()) <= ORTHONORMAL_TOL and windings == expected_windings
        return passed, measured, expected

    # ===== 12. 결정성 =====
    def _determinism(self, rng: np.random.Generator):
        state = rng.bit_generator.state

        def artifact() -> Tuple[bytes, str]:
            generator = np.random.default_rng()
            generator.bit_generator.state = state
            envelope = self._random_envelope(generator)
            field = self._propagator(PropagationModel.EXACT).propagate(envelope, 10.0)
            table = DispersionService(self.constants, self.settings).table(
                DispersionRunConfig(k0=1.0, q_max=1.0, n_points=11, L=100.0)
            )
            return encode_field(field, UnitSystem.DIMENSIONLESS), table.to_csv(index=False, float_format=CSV_FLOAT_FORMAT)

        first, second = artifact(), artifact()
        repeatable = first == second

        _, decoded = decode_field(first[0])
        round_trip = encode_field(decoded, UnitSystem.DIMENSIONLESS) == first[0]
        vector = self._propagator(PropagationModel.PARAXIAL).propagate(decoded, 0.0, Polarization.SECOND)
        _, decoded_vector = decode_field(encode_field(vector))
        vector_round_trip = decoded_vector.samples.tobytes() == vector.samples.tobytes()

        measured = {"repeatable": repeatable, "mpf1_round_trip": round_trip, "vector_round_trip": vector_round_trip}
        return repeatable and round_trip and vector_round_trip, measured, {"all": True}
