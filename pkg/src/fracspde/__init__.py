"""fracspde - Kernels, solvability, variance constants and Gaussian simulation for stochastic time-fractional equations."""

__version__ = "1.0.0"
