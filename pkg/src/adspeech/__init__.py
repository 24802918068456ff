"""Speech-based dementia screening: paralinguistic features with linear
SVM/SVR, and an FC head over pre-computed segment embeddings."""

from ._kernels import backend as kernel_backend

__version__ = "0.1.0"

__all__ = ["__version__", "kernel_backend"]
