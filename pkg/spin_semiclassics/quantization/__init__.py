"""Coherent states, Berezin quantization and Husimi densities on the symmetric subspace."""
