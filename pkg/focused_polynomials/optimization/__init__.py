# local search on the unit sphere
GRADIENT_TOLERANCE = 1e-8  # on the norm of the tangent gradient
MAX_STEP = 1.0

# restart r draws its start from stream RESTART_STREAM_OFFSET + r; stream 0 draws the subspace
RESTART_STREAM_OFFSET = 1
