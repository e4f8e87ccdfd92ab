"""Regularity exponents, Dalang verdicts and regime tags."""
