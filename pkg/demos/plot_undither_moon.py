"""
Undithering a smooth test image
===============================

Dither a 512x512 grayscale image with Floyd-Steinberg error diffusion, then
rebuild the gray levels: two passes of a 3x3 box filter followed by 200
steps of total-variation diffusion. The MSE against the original is
tracked at every step and the best iterate is kept.

Needs scikit-image for the test image; matplotlib is optional.
"""
import numpy as np
from skimage import data

from undither import PipelineConfig, SnapshotPolicy, dither_floyd_steinberg, fidelity, undither

original = data.moon()
dithered = dither_floyd_steinberg(original)
print("dithered vs original: MSE %.1f" % fidelity(original, dithered).mse)

##############################################################################
# Keep the best-MSE iterate and a hand-picked later step as well.

config = PipelineConfig(snapshot=SnapshotPolicy.parse("all,step:120"))
result = undither(dithered, config, reference=original)

steps = [r.step for r in result.rows if r.step >= 0]
mse = np.array([r.mse for r in result.rows if r.step >= 0])
print("after box filtering (step 0): MSE %.2f" % mse[0])
print("best: step %d, MSE %.2f, PSNR %.2f dB" % (result.best_step, result.best.mse, result.best.psnr))
print("step 200: MSE %.2f" % mse[-1])
print("steps whose range grew past the previous iterate:", result.overshoot_steps)

##############################################################################
# Plot the MSE curve and the images, if matplotlib is around.

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 4, figsize=(16, 4))
    axes[0].plot(steps, mse)
    axes[0].axvline(result.best_step, ls="--", c="k")
    axes[0].set_xlabel("diffusion step")
    axes[0].set_ylabel("MSE")
    for ax, (title, img) in zip(axes[1:], [
        ("dithered", dithered),
        ("best (step %d)" % result.best_step, result.snapshots["best"][1]),
        ("original", original),
    ]):
        ax.imshow(img, cmap="gray", vmin=0, vmax=255)
        ax.set_title(title)
        ax.axis("off")
    fig.tight_layout()
    fig.savefig("undither_moon.png", dpi=80)
    print("wrote undither_moon.png")
