"""HTTP service wrapping the adder toolkit; the CLI shares its handlers."""
