"""Point lists transcribed from the reference coordinate listings.

Coordinates are written as in the source, with ``t`` the generator of the
quadratic field (t^2 = 5 for H3, t^2 = t + 1 for H4).
"""

E8_ROWS = (
    "1,1,0,0,0,0,0,0", "1,-1,0,0,0,0,0,0", "1,0,1,0,0,0,0,0", "1,0,-1,0,0,0,0,0",
    "0,1,1,0,0,0,0,0", "0,1,-1,0,0,0,0,0", "1,0,0,1,0,0,0,0", "1,0,0,-1,0,0,0,0",
    "0,1,0,1,0,0,0,0", "0,1,0,-1,0,0,0,0", "0,0,1,1,0,0,0,0", "0,0,1,-1,0,0,0,0",
    "1,0,0,0,1,0,0,0", "1,0,0,0,-1,0,0,0", "0,1,0,0,1,0,0,0", "0,1,0,0,-1,0,0,0",
    "0,0,1,0,1,0,0,0", "0,0,1,0,-1,0,0,0", "0,0,0,1,1,0,0,0", "0,0,0,1,-1,0,0,0",
    "1,0,0,0,0,1,0,0", "1,0,0,0,0,-1,0,0", "0,1,0,0,0,1,0,0", "0,1,0,0,0,-1,0,0",
    "0,0,1,0,0,1,0,0", "0,0,1,0,0,-1,0,0", "0,0,0,1,0,1,0,0", "0,0,0,1,0,-1,0,0",
    "0,0,0,0,1,1,0,0", "0,0,0,0,1,-1,0,0", "1,0,0,0,0,0,1,0", "1,0,0,0,0,0,-1,0",
    "0,1,0,0,0,0,1,0", "0,1,0,0,0,0,-1,0", "0,0,1,0,0,0,1,0", "0,0,1,0,0,0,-1,0",
    "0,0,0,1,0,0,1,0", "0,0,0,1,0,0,-1,0", "0,0,0,0,1,0,1,0", "0,0,0,0,1,0,-1,0",
    "0,0,0,0,0,1,1,0", "0,0,0,0,0,1,-1,0", "1,0,0,0,0,0,0,1", "1,0,0,0,0,0,0,-1",
    "0,1,0,0,0,0,0,1", "0,1,0,0,0,0,0,-1", "0,0,1,0,0,0,0,1", "0,0,1,0,0,0,0,-1",
    "0,0,0,1,0,0,0,1", "0,0,0,1,0,0,0,-1", "0,0,0,0,1,0,0,1", "0,0,0,0,1,0,0,-1",
    "0,0,0,0,0,1,0,1", "0,0,0,0,0,1,0,-1", "0,0,0,0,0,0,1,1", "0,0,0,0,0,0,1,-1",
    "1,1,1,1,1,1,1,1", "1,1,1,1,1,1,-1,-1", "1,1,1,1,1,-1,1,-1", "1,1,1,1,1,-1,-1,1",
    "1,1,1,1,-1,1,1,-1", "1,1,1,1,-1,1,-1,1", "1,1,1,1,-1,-1,1,1", "1,1,1,1,-1,-1,-1,-1",
    "1,1,1,-1,1,1,1,-1", "1,1,1,-1,1,1,-1,1", "1,1,1,-1,1,-1,1,1", "1,1,1,-1,1,-1,-1,-1",
    "1,1,1,-1,-1,1,1,1", "1,1,1,-1,-1,1,-1,-1", "1,1,1,-1,-1,-1,1,-1", "1,1,1,-1,-1,-1,-1,1",
    "1,1,-1,1,1,1,1,-1", "1,1,-1,1,1,1,-1,1", "1,1,-1,1,1,-1,1,1", "1,1,-1,1,1,-1,-1,-1",
    "1,1,-1,1,-1,1,1,1", "1,1,-1,1,-1,1,-1,-1", "1,1,-1,1,-1,-1,1,-1", "1,1,-1,1,-1,-1,-1,1",
    "1,1,-1,-1,1,1,1,1", "1,1,-1,-1,1,1,-1,-1", "1,1,-1,-1,1,-1,1,-1", "1,1,-1,-1,1,-1,-1,1",
    "1,1,-1,-1,-1,1,1,-1", "1,1,-1,-1,-1,1,-1,1", "1,1,-1,-1,-1,-1,1,1", "1,1,-1,-1,-1,-1,-1,-1",
    "1,-1,1,1,1,1,1,-1", "1,-1,1,1,1,1,-1,1", "1,-1,1,1,1,-1,1,1", "1,-1,1,1,1,-1,-1,-1",
    "1,-1,1,1,-1,1,1,1", "1,-1,1,1,-1,1,-1,-1", "1,-1,1,1,-1,-1,1,-1", "1,-1,1,1,-1,-1,-1,1",
    "1,-1,1,-1,1,1,1,1", "1,-1,1,-1,1,1,-1,-1", "1,-1,1,-1,1,-1,1,-1", "1,-1,1,-1,1,-1,-1,1",
    "1,-1,1,-1,-1,1,1,-1", "1,-1,1,-1,-1,1,-1,1", "1,-1,1,-1,-1,-1,1,1", "1,-1,1,-1,-1,-1,-1,-1",
    "1,-1,-1,1,1,1,1,1", "1,-1,-1,1,1,1,-1,-1", "1,-1,-1,1,1,-1,1,-1", "1,-1,-1,1,1,-1,-1,1",
    "1,-1,-1,1,-1,1,1,-1", "1,-1,-1,1,-1,1,-1,1", "1,-1,-1,1,-1,-1,1,1", "1,-1,-1,1,-1,-1,-1,-1",
    "1,-1,-1,-1,1,1,1,-1", "1,-1,-1,-1,1,1,-1,1", "1,-1,-1,-1,1,-1,1,1", "1,-1,-1,-1,1,-1,-1,-1",
    "1,-1,-1,-1,-1,1,1,1", "1,-1,-1,-1,-1,1,-1,-1", "1,-1,-1,-1,-1,-1,1,-1", "1,-1,-1,-1,-1,-1,-1,1",
)

F4_ROWS = (
    "1,1,0,0", "1,-1,0,0", "1,0,1,0", "1,0,-1,0", "1,0,0,1", "1,0,0,-1",
    "0,1,1,0", "0,1,-1,0", "0,1,0,1", "0,1,0,-1", "0,0,1,1", "0,0,1,-1",
    "1,0,0,0", "0,1,0,0", "0,0,1,0", "0,0,0,1", "1,1,1,1", "1,1,-1,1",
    "1,1,1,-1", "1,1,-1,-1", "1,-1,1,1", "1,-1,-1,1", "1,-1,1,-1", "1,-1,-1,-1",
)

H3_ROWS = (
    "0,0,1", "1,0,1", "1,0,-1", "0,1,1",
    "0,1,-1", "0,1,2+t", "0,1,-2-t", "1,0,-2-t",
    "1,0,2+t", "1,-1,0", "1,1,0", "t+3,-(2*t+4),3*t+7",
    "2*t+4,-(t+3),-(3*t+7)", "2*t+4,-(t+3),3*t+7", "t+3,-(2*t+4),-(3*t+7)",
)

H4_ROWS = (
    "1,0,0,0", "0,1,0,0", "0,0,1,0", "0,0,0,1", "1,1,1,1", "1,1,1,-1",
    "1,1,-1,1", "1,1,-1,-1", "1,-1,1,1", "1,-1,1,-1", "1,-1,-1,1", "1,-1,-1,-1",
    "0,t,t^2,1", "0,t,t^2,-1", "0,t,-t^2,1", "0,t,-t^2,-1", "0,t^2,1,t", "0,t^2,1,-t",
    "0,t^2,-1,t", "0,t^2,-1,-t", "0,1,t,t^2", "0,1,t,-t^2", "0,1,-t,t^2", "0,1,-t,-t^2",
    "t,0,1,t^2", "t,0,1,-t^2", "t,0,-1,t^2", "t,0,-1,-t^2", "t^2,0,t,1", "t^2,0,t,-1",
    "t^2,0,-t,1", "t^2,0,-t,-1", "1,0,t^2,t", "1,0,t^2,-t", "1,0,-t^2,t", "1,0,-t^2,-t",
    "t,t^2,0,1", "t,t^2,0,-1", "t,-t^2,0,1", "t,-t^2,0,-1", "t^2,1,0,t", "t^2,1,0,-t",
    "t^2,-1,0,t", "t^2,-1,0,-t", "1,t,0,t^2", "1,t,0,-t^2", "1,-t,0,t^2", "1,-t,0,-t^2",
    "t,1,t^2,0", "t,1,-t^2,0", "t,-1,t^2,0", "t,-1,-t^2,0", "t^2,t,1,0", "t^2,t,-1,0",
    "t^2,-t,1,0", "t^2,-t,-1,0", "1,t^2,t,0", "1,t^2,-t,0", "1,-t^2,t,0", "1,-t^2,-t,0",
)
