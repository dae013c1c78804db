# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python kernels in pyref.py."""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef class Table:
    cdef cnp.int32_t[:, ::1] cay
    cdef cnp.int32_t[::1] inv
    cdef int n


def prepare(cayley, inverse):
    cdef Table t = Table()
    t.cay = np.ascontiguousarray(cayley, dtype=np.int32)
    t.inv = np.ascontiguousarray(inverse, dtype=np.int32)
    t.n = t.inv.shape[0]
    return t


cdef struct Workspace:
    unsigned char* mask
    unsigned char* gmask
    int* frontier
    int* fresh
    int* garr


cdef int _alloc(Workspace* ws, int n) except -1:
    ws.mask = <unsigned char*> malloc(n)
    ws.gmask = <unsigned char*> malloc(n)
    ws.frontier = <int*> malloc(n * sizeof(int))
    ws.fresh = <int*> malloc(n * sizeof(int))
    ws.garr = <int*> malloc(n * sizeof(int))
    if (ws.mask == NULL or ws.gmask == NULL or ws.frontier == NULL
            or ws.fresh == NULL or ws.garr == NULL):
        _release(ws)
        raise MemoryError()
    memset(ws.mask, 0, n)
    memset(ws.gmask, 0, n)
    return 0


cdef void _release(Workspace* ws) noexcept:
    free(ws.mask)
    free(ws.gmask)
    free(ws.frontier)
    free(ws.fresh)
    free(ws.garr)


cdef tuple _collect(unsigned char* mask, int n):
    cdef list out = []
    cdef int i
    for i in range(n):
        if mask[i]:
            out.append(i)
    return tuple(out)


cdef void _close(Table handle, Workspace* ws, int identity, int ng) noexcept:
    # BFS over right multiplication by the ng generators in ws.garr,
    # growing ws.mask in place
    cdef cnp.int32_t[:, ::1] cay = handle.cay
    cdef int fcount = 0, newcount, i, j, x, y
    cdef int* tmp
    ws.mask[identity] = 1
    ws.frontier[fcount] = identity
    fcount += 1
    for j in range(ng):
        x = ws.garr[j]
        if not ws.mask[x]:
            ws.mask[x] = 1
            ws.frontier[fcount] = x
            fcount += 1
    while fcount > 0:
        newcount = 0
        for i in range(fcount):
            x = ws.frontier[i]
            for j in range(ng):
                y = cay[x, ws.garr[j]]
                if not ws.mask[y]:
                    ws.mask[y] = 1
                    ws.fresh[newcount] = y
                    newcount += 1
        tmp = ws.frontier
        ws.frontier = ws.fresh
        ws.fresh = tmp
        fcount = newcount


def closure(Table handle, gens, int identity):
    cdef int n = handle.n
    cdef Workspace ws
    cdef int ng = 0, i, x
    _alloc(&ws, n)
    try:
        for obj in gens:
            x = obj
            ws.gmask[x] = 1
        for i in range(n):
            if ws.gmask[i]:
                ws.garr[ng] = i
                ng += 1
        memset(ws.mask, 0, n)
        _close(handle, &ws, identity, ng)
        return _collect(ws.mask, n)
    finally:
        _release(&ws)


def pair_commutators(Table handle, xs, ys):
    cdef cnp.int32_t[:, ::1] cay = handle.cay
    cdef cnp.int32_t[::1] inv = handle.inv
    cdef int n = handle.n
    cdef unsigned char* mask = <unsigned char*> malloc(n)
    if mask == NULL:
        raise MemoryError()
    memset(mask, 0, n)
    cdef int x, y, xi
    try:
        for ox in xs:
            x = ox
            xi = inv[x]
            for oy in ys:
                y = oy
                mask[cay[cay[cay[x, y], xi], inv[y]]] = 1
        return _collect(mask, n)
    finally:
        free(mask)


def normal_closure(Table handle, members, int identity):
    cdef cnp.int32_t[:, ::1] cay = handle.cay
    cdef cnp.int32_t[::1] inv = handle.inv
    cdef int n = handle.n
    cdef Workspace ws
    cdef int ng = 0, g, i, m
    _alloc(&ws, n)
    try:
        for obj in members:
            m = obj
            for g in range(n):
                ws.gmask[cay[cay[g, m], inv[g]]] = 1
        for i in range(n):
            if ws.gmask[i]:
                ws.garr[ng] = i
                ng += 1
        memset(ws.mask, 0, n)
        _close(handle, &ws, identity, ng)
        return _collect(ws.mask, n)
    finally:
        _release(&ws)


def normalize_syllables(handles, identities, syllables):
    cdef list stack = []
    cdef Py_ssize_t depth = 0
    cdef int f, x, merged, ident, top_f, top_x
    cdef tuple top
    cdef Table t
    for syl in syllables:
        top = <tuple> syl
        f = top[0]
        x = top[1]
        ident = identities[f]
        if x == ident:
            continue
        if depth > 0:
            top = <tuple> (stack[depth - 1])
            top_f = top[0]
            if top_f == f:
                top_x = top[1]
                t = <Table> (handles[f])
                merged = t.cay[top_x, x]
                stack.pop()
                depth -= 1
                if merged != ident:
                    stack.append((f, merged))
                    depth += 1
                continue
        stack.append((f, x))
        depth += 1
    return tuple(stack)
