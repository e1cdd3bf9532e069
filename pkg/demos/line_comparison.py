"""
The same Grover coin on a line (left, stay, right) for comparison.
"""
import numpy as np

from honeywalk.limitmap import compute_F_line, extremal_states

F = compute_F_line(grid_n=4096)
np.set_printoptions(precision=8, suppress=True)
print(F.matrix.real)

ext = extremal_states(F)
print("eigenvalues:", ext.eigenvalues)
print("closed forms:", 0.0, np.sqrt(6) - 2, 3 - np.sqrt(6))
print("largest limit probability:", ext.max_prob, "from input", ext.max_states[:, 0])
print("delocalizing input:", ext.zero_states[:, 0])
