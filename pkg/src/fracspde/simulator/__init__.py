"""Covariance engine, Gram matrices, field sampling and small-ball Monte Carlo."""
