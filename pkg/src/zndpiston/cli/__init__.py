"""Command-line front end: scenario ingestion, runs, and output files."""
