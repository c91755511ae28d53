"""Mean-field spin Hamiltonians on the symmetric subspace."""
