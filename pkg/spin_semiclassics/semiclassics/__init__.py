"""Classical limits, defects, symmetry breaking and forbidden-region decay."""
