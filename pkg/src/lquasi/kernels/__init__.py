"""Hot loops.

Each kernel is a plain-loop function compiled by numba when enabled (see
``lquasi._accel``).  Where an interpreted loop would be too slow to be useful,
a vectorized numpy twin is provided and selected by the dispatcher functions
exported here.
"""
