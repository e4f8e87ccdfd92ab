"""Runner module for executing batches of numerical tasks."""
