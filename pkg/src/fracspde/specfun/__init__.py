"""Real-argument special functions: Gamma, Mittag-Leffler, Gauss hypergeometric."""
