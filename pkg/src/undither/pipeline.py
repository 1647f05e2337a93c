"""End-to-end undithering run with per-step feature capture.

The default configuration is the reference experiment: two passes of a 3x3
box filter, then 200 steps of diffusion with p=1, eps=0.001, dt=0.1, and
co-occurrence features at 0 degrees, distance 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from .diffuse import DiffusionParams, iterate
from .dither import DitherMethod, is_bilevel
from .raster import as_gray, histogram, to_float, to_gray
from .smooth import BoxFilterSpec, box_filter
from .stats import FidelityMetrics, fidelity, first_order, glcm, second_order

CSV_COLUMNS = (
    "step", "mean", "variance", "mu3_paper", "mu4", "energy1", "entropy1",
    "energy2", "entropy2", "contrast", "homogeneity", "correlation", "mse", "psnr",
)

REFERENCE_STEP = -1


class PipelineError(ValueError):
    """Bad input or configuration for an undithering run."""


@dataclass(frozen=True)
class SnapshotPolicy:
    best: bool = True
    final: bool = True
    steps: tuple[int, ...] = ()
    # "best" was asked for by name, so a missing reference is an error
    require_best: bool = False

    @classmethod
    def parse(cls, text: str) -> "SnapshotPolicy":
        """Parse a comma list of ``best``, ``final``, ``all`` and ``step:K``."""
        best = final = require_best = False
        steps = []
        for tok in (t.strip() for t in text.split(",")):
            if tok == "all":
                best = final = True
            elif tok == "best":
                best = require_best = True
            elif tok == "final":
                final = True
            elif tok.startswith("step:") and tok[5:].isdigit():
                steps.append(int(tok[5:]))
            else:
                raise PipelineError(f"bad snapshot policy {tok!r}")
        return cls(best=best, final=final, steps=tuple(sorted(set(steps))),
                   require_best=require_best)


@dataclass(frozen=True)
class PipelineConfig:
    method: DitherMethod = DitherMethod()
    box: BoxFilterSpec = BoxFilterSpec()
    diffusion: DiffusionParams = DiffusionParams()
    snapshot: SnapshotPolicy = SnapshotPolicy()
    theta: int = 0
    d: int = 1
    stride: int = 1

    def __post_init__(self):
        if self.stride < 1:
            raise PipelineError(f"stride must be >= 1, got {self.stride}")
        for k in self.snapshot.steps:
            if k > self.diffusion.iterations:
                raise PipelineError(f"snapshot step {k} exceeds {self.diffusion.iterations} iterations")


@dataclass(frozen=True)
class MetricsRow:
    step: Optional[int]
    mean: float
    variance: float
    mu3: float
    mu4: float
    energy1: float
    entropy1: float
    energy2: float
    entropy2: float
    contrast: float
    homogeneity: float
    correlation: float
    mse: Optional[float] = None
    psnr: Optional[float] = None

    def csv_fields(self) -> list[str]:
        values = [getattr(self, f.name) for f in fields(self)]
        return ["" if self.step is None else str(self.step)] + [_fmt(v) for v in values[1:]]


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    # +0.0 folds -0.0 so equal runs print identically
    return f"{value + 0.0:.9g}"


def measure(img, step: Optional[int] = None, reference=None,
            theta: int = 0, d: int = 1) -> MetricsRow:
    """All first-order, co-occurrence and (with ``reference``) fidelity features."""
    gray = as_gray(img)
    fo = first_order(histogram(gray))
    so = second_order(glcm(gray, theta, d))
    fid = fidelity(reference, gray) if reference is not None else None
    return MetricsRow(
        step=step,
        mean=fo.mean, variance=fo.variance, mu3=fo.mu3, mu4=fo.mu4,
        energy1=fo.energy, entropy1=fo.entropy,
        energy2=so.energy, entropy2=so.entropy, contrast=so.contrast,
        homogeneity=so.homogeneity, correlation=so.correlation,
        mse=fid.mse if fid else None, psnr=fid.psnr if fid else None,
    )


@dataclass
class UnditherResult:
    rows: list[MetricsRow]
    final: np.ndarray
    snapshots: dict[str, tuple[int, np.ndarray]] = field(default_factory=dict)
    best_step: Optional[int] = None
    best: Optional[FidelityMetrics] = None
    dithered: Optional[FidelityMetrics] = None
    overshoot_steps: int = 0

    def summary(self) -> dict[str, str]:
        out = {}
        if self.best is not None:
            out["best_mse_step"] = str(self.best_step)
            out["best_mse"] = _fmt(self.best.mse)
            out["best_psnr"] = _fmt(self.best.psnr)
        if self.dithered is not None:
            out["dithered_mse"] = _fmt(self.dithered.mse)
            out["dithered_psnr"] = _fmt(self.dithered.psnr)
        out["range_overshoot_steps"] = str(self.overshoot_steps)
        for name, (step, _) in sorted(self.snapshots.items()):
            out[f"snapshot_{name}_step"] = str(step)
        final = next((r for r in reversed(self.rows) if r.step is not None and r.step >= 0), None)
        if final is not None:
            for col, value in zip(CSV_COLUMNS, final.csv_fields()):
                out[f"final_{col}"] = value
        return out


def undither(dithered, config: PipelineConfig = PipelineConfig(), reference=None,
             force: bool = False) -> UnditherResult:
    """Box-filter and diffuse a bilevel image, measuring each observed step.

    Rows come in order: the reference image (step -1, when given), the
    filtered image (step 0), then every ``stride``-th diffusion step and the
    last one. The best-MSE step is the earliest minimum among those rows.
    """
    dithered = as_gray(dithered)
    if not force and not is_bilevel(dithered):
        raise PipelineError("input is not bilevel {0, 255}; pass force=True to undither anyway")
    if reference is not None:
        reference = as_gray(reference)
        if reference.shape != dithered.shape:
            raise PipelineError(f"reference shape {reference.shape} != input shape {dithered.shape}")
    policy = config.snapshot
    if policy.require_best and reference is None:
        raise PipelineError("best-MSE snapshot needs a reference image")

    theta, d = config.theta, config.d
    iterations = config.diffusion.iterations
    result = UnditherResult(rows=[], final=dithered)
    if reference is not None:
        result.rows.append(measure(reference, REFERENCE_STEP, theta=theta, d=d))
        result.dithered = fidelity(reference, dithered)

    best_gray = None

    def observe(step: int, img: np.ndarray) -> None:
        nonlocal best_gray
        measured = step % config.stride == 0 or step == iterations
        wanted = step in policy.steps
        if not (measured or wanted):
            return
        gray = to_gray(img)
        if wanted:
            result.snapshots[f"step{step}"] = (step, gray)
        if not measured:
            return
        row = measure(gray, step, reference, theta, d)
        result.rows.append(row)
        if row.mse is not None and (result.best is None or row.mse < result.best.mse):
            result.best = FidelityMetrics(row.mse, row.psnr)
            result.best_step = step
            best_gray = gray

    filtered = box_filter(to_float(dithered), config.box)
    observe(0, filtered)
    final = filtered
    for state in iterate(filtered, config.diffusion):
        if state.overshoot:
            result.overshoot_steps += 1
        observe(state.step, state.image)
        final = state.image

    result.final = to_gray(final)
    if policy.final:
        result.snapshots["final"] = (iterations, result.final)
    if policy.best and best_gray is not None:
        result.snapshots["best"] = (result.best_step, best_gray)
    return result
