# diagonal shift policies
PSD = "psd"  # keep the diagonal as given
MIN_EIGENVALUE = "min-eigenvalue"  # lambda = max(0, -lambda_min(C with zero diagonal)) + SHIFT_MARGIN

SHIFT_MARGIN = 1e-9
PSD_TOLERANCE = 1e-9  # on eigenvalues, relative to the largest one (at least 1)
