"""Reconstruct gray images from 1-bit dithered ones.

Pipeline: repeated box filtering, then explicit total-variation style
diffusion, with first-order, co-occurrence and fidelity features measured
at every step.
"""
from .diffuse import DiffusionError, DiffusionParams, DiffusionState, diffuse, diffusion_step, diffusivity
from .dither import DitherMethod, bayer_matrix, dither_floyd_steinberg, dither_ordered, is_bilevel
from .pipeline import MetricsRow, PipelineConfig, SnapshotPolicy, UnditherResult, measure, undither
from .raster import (Histogram, PgmError, histogram, load_pgm, read_pgm, save_pgm, to_float,
                     to_gray, write_pgm)
from .smooth import BoxFilterSpec, box_filter
from .stats import (FidelityMetrics, FirstOrderStats, Glcm, SecondOrderStats, fidelity,
                    first_order, glcm, second_order)

__version__ = "0.1.0"
