"""
Flux limit of the explicit scheme
=================================

With eps = 0.001 the conductance is up to 1000, far past the usual
explicit-scheme bound. For p = 1 each edge flux g / (|g| + eps) is still
below 1 in magnitude, so no pixel moves more than 4 * dt per step. In
nearly flat regions neighbours can still overshoot each other; the
overshoot is bounded by the same 4 * dt and shrinks with it.
"""
import numpy as np

from undither import DiffusionParams, DiffusionState, diffusion_step

rng = np.random.default_rng(1)
img = 100 + rng.uniform(-0.05, 0.05, (64, 64))

for dt in (0.1, 0.01):
    params = DiffusionParams(dt=dt)
    state = DiffusionState(img)
    biggest, worst, overshoots = 0.0, 0.0, 0
    for _ in range(50):
        nxt = diffusion_step(state, params)
        biggest = max(biggest, np.abs(nxt.image - state.image).max())
        overshoots += nxt.overshoot > 0
        worst = max(worst, nxt.overshoot)
        state = nxt
    print(f"dt={dt}: largest per-step change {biggest:.4f} (limit {4 * dt:.2f}), "
          f"overshoot in {overshoots}/50 steps (max {worst:.4f}), sum drift {state.image.sum() - img.sum():.2e}")
