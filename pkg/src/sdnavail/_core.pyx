# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch evaluation of the system-up predicate.

Same contract as the pure fallback: given the flat arrays of a compiled
problem and a (batch, n_components) uint8 status matrix, return one uint8
per sample.  Connectivity uses a per-sample union-find with path halving.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def batch_is_operational_arrays(
    cnp.uint8_t[:, ::1] statuses,
    cnp.int32_t[::1] vertex_comp,
    cnp.int32_t[::1] edges_u,
    cnp.int32_t[::1] edges_v,
    cnp.int32_t[::1] edges_comp,
    cnp.int32_t[::1] attach_term,
    cnp.int32_t[::1] attach_node,
    cnp.int32_t[::1] terminals,
    cnp.int32_t[::1] ctrl_comp,
    cnp.int32_t[::1] homing_offsets,
    cnp.int32_t[::1] homing_comp,
    cnp.int32_t[::1] homing_vertex,
    bint require_anchor,
):
    cdef Py_ssize_t b = statuses.shape[0]
    cdef Py_ssize_t nv = vertex_comp.shape[0]
    cdef Py_ssize_t ne = edges_u.shape[0]
    cdef Py_ssize_t na = attach_term.shape[0]
    cdef Py_ssize_t nt = terminals.shape[0]
    cdef Py_ssize_t nc = ctrl_comp.shape[0]

    out_arr = np.zeros(b, dtype=np.uint8)
    cdef cnp.uint8_t[::1] out = out_arr
    if nt < 2:
        out_arr[:] = 1
        return out_arr

    parent_arr = np.empty(nv, dtype=np.int32)
    cdef cnp.int32_t[::1] parent_mv = parent_arr
    cdef int* parent = <int*> &parent_mv[0]

    cdef Py_ssize_t s, i, h
    cdef int u, v, ru, rv, root, c
    cdef bint ok, anchored
    cdef const cnp.uint8_t* row

    with nogil:
        for s in range(b):
            row = &statuses[s, 0]
            for i in range(nv):
                parent[i] = <int> i

            for i in range(ne):
                if not row[edges_comp[i]]:
                    continue
                u = edges_u[i]
                v = edges_v[i]
                if vertex_comp[u] >= 0 and not row[vertex_comp[u]]:
                    continue
                if vertex_comp[v] >= 0 and not row[vertex_comp[v]]:
                    continue
                ru = _find(parent, u)
                rv = _find(parent, v)
                if ru != rv:
                    parent[rv] = ru
            for i in range(na):
                v = attach_node[i]
                if vertex_comp[v] >= 0 and not row[vertex_comp[v]]:
                    continue
                ru = _find(parent, attach_term[i])
                rv = _find(parent, v)
                if ru != rv:
                    parent[rv] = ru

            root = _find(parent, terminals[0])
            ok = True
            for i in range(1, nt):
                if _find(parent, terminals[i]) != root:
                    ok = False
                    break
            if not ok:
                continue

            if require_anchor:
                anchored = False
                for c in range(nc):
                    if not row[ctrl_comp[c]]:
                        continue
                    for h in range(homing_offsets[c], homing_offsets[c + 1]):
                        if not row[homing_comp[h]]:
                            continue
                        v = homing_vertex[h]
                        if vertex_comp[v] >= 0 and not row[vertex_comp[v]]:
                            continue
                        if _find(parent, v) == root:
                            anchored = True
                            break
                    if anchored:
                        break
                if not anchored:
                    continue
            out[s] = 1

    return out_arr
