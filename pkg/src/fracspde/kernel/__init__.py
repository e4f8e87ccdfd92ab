"""Fundamental solutions: Fourier symbols, physical-space kernel, origin series and tails."""
