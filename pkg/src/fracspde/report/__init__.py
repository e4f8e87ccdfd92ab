"""Report module for writing, validating and comparing result files."""
