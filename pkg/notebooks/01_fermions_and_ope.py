# coding: utf-8

# # Free fermions from a bicharacter
#
# A bicharacter on the generators fixes every correlation function of the
# algebra. Here we take the two built-in fermion presets, look at their
# pairings, and read off the singular parts of phi(z) phi(w).

# In[1]:

from twistva.bicharacter import extend_eval, preset
from twistva.hopf import act_T, element_str, gen, mul
from twistva.tva import max_pole, ope_residues, vertex_op


# In[2]:

for name in ("Bf", "Df"):
    r = preset(name)
    phi = gen(r.ambient, "phi")
    print(name, "r(phi, phi) =", extend_eval(r, phi, phi).to_str())


# The B pairing has its pole on z = -w, the D pairing on z = w. Residues at
# each diagonal z = eps^i w give the OPE coefficients.

# In[3]:

r = preset("Bf")
phi = gen(r.ambient, "phi")
for i in range(r.N):
    for k in range(max_pole(r, phi, phi, i)):
        res = ope_residues(r, phi, phi, i, k)
        print("diagonal", i, "order", k + 1, res.to_json())


# In[4]:

# the field product applied to the vacuum, truncated at C = 3
print(vertex_op(r, phi, phi, 3).to_str())


# In[5]:

# h_phi = phi T phi and its two-point function
hp = mul(phi, act_T(phi))
print(element_str(hp))
print(extend_eval(r, hp, hp).to_str())
