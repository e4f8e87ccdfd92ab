"""Variance constants and the auxiliary integrals behind them."""
