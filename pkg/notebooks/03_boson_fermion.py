# coding: utf-8

# # Boson-fermion correspondence, checked on Fock spaces
#
# The oracle builds Fock spaces straight from Clifford and Heisenberg mode
# relations. Vertex operator VEVs on the boson side should agree with
# fermion VEVs term by term inside the truncation window.

# In[1]:

from twistva.oracle import (boson_vertex_vev, closed_vev, correspondence_check, fermion_vev,
                            mode_bracket)
from twistva.oracle.checks import closed_series


# In[2]:

C = 6
f = fermion_vev("D", 2, C)
b = boson_vertex_vev("D", (-1, 1), C)
print(sorted(f.terms.items())[:4])
print(sorted(b.terms.items())[:4])


# In[3]:

print(boson_vertex_vev("A", (1, -1, 1, -1), C).terms == closed_series(closed_vev("A", (1, -1, 1, -1)), C))


# In[4]:

# brackets of h(z) = 1/2 :phi(z) phi(-z): on the D Fock space
print([[mode_bracket("D", m, n) for n in range(-3, 4)] for m in range(-3, 4)])


# In[5]:

for kind in ("B", "D"):
    print(correspondence_check(kind, 2, C).summary())

# order 3 variant
print(correspondence_check("D-N", 2, C, 3).summary())
