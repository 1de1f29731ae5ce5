"""Maps of sphere algebras, the two-sided bar construction, and homotopy
cofibers.

A map out of a sphere algebra is fixed by where the generators go: a class
is handed over as a cycle in the normalized chains of the target, repaired
to a representative with every face zero (the Moore position), and spread
over all levels by degeneracy operators.  The homotopy pushout of
ground-field <- A -> B is realized by the diagonal of the two-sided bar
object with k-th layer A^(x k) (x) B; truncation is by bar degree, by
simplicial level, and by the induced weight s * (A-weights) + B-weight,
where s is the weight of the generator images.  All three truncations are
closed under the structure maps, so the result is an honest simplicial
vector space and its homotopy approximates the cofiber from below, with
per-degree certification by recomputation at enlarged bounds.
"""

from __future__ import annotations

import math
from itertools import combinations, product

from .exactfield import FieldError, Mat, kernel_basis, solve
from .simplicial import GradedDims, SimplicialError, SimplicialVectorSpace
from .symalg import sphere_algebra


class CycleError(ValueError):
    """The supplied vector is not a usable cycle for a representing map."""


class TableMismatch(AssertionError):
    """Computed cofiber homotopy disagrees with the closed-form table in a
    certified degree; an implementation bug, not a truncation artifact."""


# --------------------------------------------------------------------------
# degeneracy words


def _degeneracy_word(sigma):
    """Factor a surjection into codegeneracies; returns the s_i word to
    apply, innermost first."""
    word = []
    sigma = list(sigma)
    while True:
        for i in range(len(sigma) - 1):
            if sigma[i] == sigma[i + 1]:
                word.append(i)
                del sigma[i + 1]
                break
        else:
            return word


def _apply_surjection(component_list, weight, sigma, n, vec):
    """Apply the operator of sigma: [m] ->> [n] to a level-n vector living
    in the given weight component."""
    word = _degeneracy_word(sigma)
    out = dict(vec)
    level = n
    for i in reversed(word):
        mat = component_list[weight].degens[level][i]
        out = mat.apply(out)
        level += 1
    return out


# --------------------------------------------------------------------------
# algebra maps


class AlgebraMap:
    """Multiplicative map between sphere algebras, fixed on generators.

    generator_images[m] is the matrix K(V, n)_m -> Sym^s(K_target)_m; the
    images are homogeneous of one target weight s (the weight ratio), which
    is what makes the induced-weight truncation of the bar object sound.
    """

    def __init__(self, source, target, weight_ratio, level_maps, recipe):
        self.source = source
        self.target = target
        self.weight_ratio = weight_ratio
        self.level_maps = level_maps
        self.recipe = recipe  # (n, weight, class_vec) for rebuilding
        self._weight_maps = {}
        self.check_simplicial()

    @property
    def field(self):
        return self.source.field

    def check_simplicial(self):
        """Generator images commute with faces and degeneracies."""
        K = self.source.base
        s = self.weight_ratio
        tgt = self.target.components[s] if s <= self.target.W else None
        if tgt is None:
            raise ValueError("target truncated below the image weight")
        T = min(K.T, tgt.T)
        for m in range(1, T + 1):
            for i in range(m + 1):
                lhs = tgt.faces[m][i] @ self.level_maps[m]
                rhs = self.level_maps[m - 1] @ K.faces[m][i]
                if lhs != rhs:
                    raise SimplicialError(
                        "generator images do not commute with d_%d at level %d"
                        % (i, m)
                    )
        for m in range(T):
            for i in range(m + 1):
                lhs = tgt.degens[m][i] @ self.level_maps[m]
                rhs = self.level_maps[m + 1] @ K.degens[m][i]
                if lhs != rhs:
                    raise SimplicialError(
                        "generator images do not commute with s_%d at level %d"
                        % (i, m)
                    )

    def check_multiplicative(self, weights=(1, 2), levels=None):
        """phi(xy) = phi(x)phi(y) on represented weights (spot check)."""
        levels = levels if levels is not None else range(self.source.T + 1)
        for w in weights:
            if w + 1 > self.source.W or (w + 1) * self.weight_ratio > self.target.W:
                continue
            for m in levels:
                left = self.weight_map(w + 1, m)
                dim1 = self.source.components[1].level_dims[m]
                dimw = self.source.components[w].level_dims[m]
                for i1 in range(dim1):
                    img1 = dict(self.weight_map(1, m).cols[i1])
                    for iw in range(dimw):
                        imgw = dict(self.weight_map(w, m).cols[iw])
                        prod_img = self.target.multiply_elements(
                            self.weight_ratio, img1,
                            w * self.weight_ratio, imgw, m,
                        )
                        mono = tuple(
                            sorted(self.source.monomials[1][m][i1]
                                   + self.source.monomials[w][m][iw])
                        )
                        j = self.source.monomials[w + 1][m].index(mono)
                        if dict(left.cols[j]) != prod_img:
                            raise SimplicialError(
                                "generator extension is not multiplicative"
                            )
        return True

    def weight_map(self, w, m):
        """Sym^w(K_source)_m -> Sym^{w s}(K_target)_m, multiplicatively.

        Returns None when the target weight exceeds the target truncation
        (the product is truncated away).
        """
        s = self.weight_ratio
        if w * s > self.target.W:
            return None
        key = (w, m)
        cached = self._weight_maps.get(key)
        if cached is not None:
            return cached
        F = self.field
        if w == 0:
            out = Mat.identity(F, 1)
        elif w == 1:
            out = self.level_maps[m]
        else:
            prev = self.weight_map(w - 1, m)
            gen = self.level_maps[m]
            cols = []
            for mono in self.source.monomials[w][m]:
                head = mono[:-1]
                last = mono[-1]
                iprev = self.source.monomials[w - 1][m].index(head)
                vec = self.target.multiply_elements(
                    (w - 1) * s, dict(prev.cols[iprev]),
                    s, dict(gen.cols[last]), m,
                )
                cols.append(vec)
            out = Mat(
                F,
                self.target.components[w * s].level_dims[m],
                self.source.components[w].level_dims[m],
                cols,
            )
        self._weight_maps[key] = out
        return out

    def rebuilt(self, source_W=None, target_W=None, T=None):
        """Same map on algebras rebuilt with enlarged truncations."""
        n, weight, cycles = self.recipe
        T = T if T is not None else self.source.T
        target = sphere_algebra(
            self.target.field, self.target.q, self.target.n, T,
            target_W if target_W is not None else self.target.W,
        )
        return representing_map(
            target, n, weight, cycles,
            source_W=source_W if source_W is not None else self.source.W,
        )

    def __repr__(self):
        return "AlgebraMap(S(%d gen, deg %d) -> S(%d gen, deg %d), ratio %d)" % (
            self.source.q, self.source.n, self.target.q, self.target.n,
            self.weight_ratio,
        )


def _moore_representative(component, n, class_vec):
    """Lift a normalized degree-n class to a level-n vector with every face
    zero, inside one weight component.

    Returns the representative; raises CycleError if the input is not a
    cycle or the lift fails.
    """
    F = component.field
    dim_n = component.level_dims[n]
    if n == 0:
        moore = Mat.identity(F, dim_n)
    else:
        stacked = component.faces[n][0]
        for i in range(1, n):
            stacked = stacked.vstack(component.faces[n][i])
        moore = kernel_basis(stacked)
    ncx = component.normalized_chains()
    # coordinates of the Moore columns in the normalized quotient
    proj_cols = [ncx.project(n, dict(col)) for col in moore.cols]
    proj = Mat(F, ncx.dims[n], moore.ncols, proj_cols)
    coeffs = solve(proj, dict(class_vec))
    if coeffs is None:
        raise CycleError("class does not lift to the Moore complex")
    rep = moore.apply(coeffs)
    # the lift must be an honest cycle: the last face has to vanish too
    if n >= 1 and component.faces[n][n].apply(rep):
        raise CycleError("input is not a cycle: the boundary is nonzero")
    if ncx.differential(n).apply(dict(class_vec)):
        raise CycleError("input is not a cycle in the normalized chains")
    return rep


def representing_map(target, n, weight, class_vec, source_W=1,
                     verify_class=True):
    """Algebra map from the sphere on degree-n generators into target,
    sending each generator to a given normalized class.

    class_vec is one sparse vector over the degree-n normalized chains of
    the target's weight component, or a list of them (one per generator);
    the empty vector gives a generator that factors through the
    augmentation.  The induced map on degree-n homotopy is computed and
    verified to hit the requested classes.
    """
    field = target.field
    cycles = (list(class_vec) if isinstance(class_vec, (list, tuple))
              else [class_vec])
    source_q = len(cycles)
    if weight < 1 or weight > target.W:
        raise ValueError("class weight %d outside the target truncation" % weight)
    if n > target.T:
        raise ValueError("class degree above the target truncation")
    source = sphere_algebra(field, source_q, n, target.T, source_W)
    K = source.base
    component = target.components[weight]
    reps = [
        _moore_representative(component, n, c) if c else {} for c in cycles
    ]
    level_maps = []
    for m in range(target.T + 1):
        cols = []
        for sigma, k, e in K.basis_labels[m]:
            # K(V, n) basis elements are indexed by surjections [m] ->> [n]
            # together with a generator color e
            cols.append(
                _apply_surjection(target.components, weight, sigma, n, reps[e])
            )
        level_maps.append(
            Mat(field, component.level_dims[m], K.level_dims[m], cols)
        )
    out = AlgebraMap(source, target, weight, level_maps,
                     recipe=(n, weight, [dict(c) for c in cycles]))
    if verify_class and any(cycles):
        src_ncx = K.normalized_chains()
        dst_ncx = component.normalized_chains()
        chain = src_ncx.induced_map(dst_ncx, level_maps)
        from .symalg import induced_homology_matrices

        induced = induced_homology_matrices(src_ncx, dst_ncx, chain, n)[n]
        _, coords = dst_ncx.homology_reps(n)
        want_cols = [coords(dict(c)) if c else {} for c in cycles]
        if induced.cols != want_cols:
            raise CycleError("map does not induce the requested classes")
    return out


def identity_map(algebra, source_W=None):
    """The identity-class map: each generator to its own homotopy class."""
    n = algebra.n
    cycles = [{i: algebra.field.one()} for i in range(algebra.q)]
    return representing_map(algebra, n, 1, cycles,
                            source_W=algebra.W if source_W is None else source_W)


def zero_map(algebra, n, source_W=1):
    """The map factoring through the augmentation (generator to 0)."""
    return representing_map(algebra, n, 1, {}, source_W=source_W)


# --------------------------------------------------------------------------
# the bar diagonal


def bar_diagonal(f, N, T, W):
    """Diagonal of the two-sided bar object of ground <- source -> target,
    truncated at bar degree N, level T, induced weight W.

    Level m is spanned by tuples (a_1, ..., a_m, b) of weight-graded
    monomials with at most N non-unit a-slots and induced weight at most W;
    faces multiply adjacent slots, drop a unit first slot, or push the last
    slot through the map into b.  Returns a SimplicialVectorSpace whose
    homotopy approximates the cofiber homotopy from below.
    """
    A, B = f.source, f.target
    field = f.field
    s = f.weight_ratio
    if A.field != B.field:
        raise FieldError("mismatched fields")
    if T > A.T or T > B.T:
        raise ValueError("algebras truncated below the requested level")
    max_a_weight = min(A.W, W // s)
    if A.W < W // s:
        raise ValueError("source algebra truncated below weight %d" % (W // s))
    if B.W < W:
        raise ValueError("target algebra truncated below weight %d" % W)
    if N < 0 or W < 0 or T < 0:
        raise ValueError("bounds must be nonnegative")

    # codes: per level, the graded monomial basis of each algebra
    def build_codes(alg, max_w):
        per_level = []
        for m in range(T + 1):
            lv = []
            for d in range(max_w + 1):
                for i in range(alg.components[d].level_dims[m]):
                    lv.append((d, i))
            per_level.append(lv)
        return per_level

    acodes = build_codes(A, max_a_weight)
    bcodes = build_codes(B, min(B.W, W))
    acode_index = [{c: k for k, c in enumerate(lv)} for lv in acodes]
    bcode_index = [{c: k for k, c in enumerate(lv)} for lv in bcodes]

    bases = []
    index = []
    for m in range(T + 1):
        nonunit = [k for k, (d, _) in enumerate(acodes[m]) if d > 0]
        unit = acode_index[m][(0, 0)]
        basis = []
        kmax = min(N, m, W // s) if s else min(N, m)
        for k in range(kmax + 1):
            for positions in combinations(range(m), k):
                for choice in product(nonunit, repeat=k):
                    wa = sum(acodes[m][c][0] for c in choice)
                    if s * wa > W:
                        continue
                    slots = [unit] * m
                    for pos, c in zip(positions, choice):
                        slots[pos] = c
                    for kb, (db, _) in enumerate(bcodes[m]):
                        if s * wa + db <= W:
                            basis.append((tuple(slots), kb))
        basis.sort()
        bases.append(basis)
        index.append({b: i for i, b in enumerate(basis)})

    dims = [len(b) for b in bases]

    def apply_component_map(alg_codes, code, mat_by_weight, target_index):
        """Apply a per-weight family of matrices to one code; sparse image."""
        d, i = code
        mat = mat_by_weight[d]
        if mat is None:
            return {}
        return {
            target_index[(d, j)]: v for j, v in mat.cols[i].items()
        }

    def face_matrix(m, i):
        a_face = [A.components[d].faces[m][i] for d in range(max_a_weight + 1)]
        b_face = [B.components[d].faces[m][i] for d in range(min(B.W, W) + 1)]
        cols = []
        for slots, kb in bases[m]:
            # levelwise face on every slot and on b: branches accumulate
            branches = [((), field.one())]
            dead = False
            for c in slots:
                img = apply_component_map(acodes[m], acodes[m][c],
                                          a_face, acode_index[m - 1])
                if not img:
                    dead = True
                    break
                new = []
                for prefix, coeff in branches:
                    for code2, v in img.items():
                        new.append((prefix + (code2,), field.mul(coeff, v)))
                branches = new
            if dead:
                cols.append({})
                continue
            img_b = apply_component_map(bcodes[m], bcodes[m][kb],
                                        b_face, bcode_index[m - 1])
            if not img_b:
                cols.append({})
                continue
            out = {}
            for prefix, coeff in branches:
                for kb2, vb in img_b.items():
                    _bar_face_accumulate(
                        out, prefix, kb2, field.mul(coeff, vb), i, m - 1
                    )
            cols.append(out)
        return Mat(field, dims[m - 1], dims[m], cols)

    def _bar_face_accumulate(out, slots, kb, coeff, i, lvl):
        """Apply bar face i to (slots, b) at the target level and add."""
        F = field
        slots = list(slots)
        if i == 0:
            d0, _ = acodes[lvl][slots[0]]
            if d0 != 0:
                return
            new_slots = tuple(slots[1:])
            _emit(out, new_slots, kb, coeff, lvl)
            return
        if i < len(slots):
            c1 = acodes[lvl][slots[i - 1]]
            c2 = acodes[lvl][slots[i]]
            d1, i1 = c1
            d2, i2 = c2
            prod = A.multiply_elements(d1, {i1: F.one()}, d2, {i2: F.one()}, lvl)
            for j, v in prod.items():
                new_slots = tuple(
                    slots[: i - 1] + [acode_index[lvl][(d1 + d2, j)]] + slots[i + 1:]
                )
                _emit(out, new_slots, kb, F.mul(coeff, v), lvl)
            return
        # i == len(slots): push the last slot through f and into b
        dlast, ilast = acodes[lvl][slots[-1]]
        wmap = f.weight_map(dlast, lvl)
        if wmap is None:
            return
        db, ib = bcodes[lvl][kb]
        fa = dict(wmap.cols[ilast])
        prod = B.multiply_elements(dlast * s, fa, db, {ib: F.one()}, lvl)
        for j, v in prod.items():
            new_slots = tuple(slots[:-1])
            _emit(out, new_slots, bcode_index[lvl][(dlast * s + db, j)],
                  F.mul(coeff, v), lvl)

    def _emit(out, slots, kb, coeff, lvl):
        if coeff == 0:
            return
        key = index[lvl].get((slots, kb))
        if key is None:
            # truncated away (weight or bar-degree bound)
            db, _ = bcodes[lvl][kb]
            wa = sum(acodes[lvl][c][0] for c in slots)
            nonunit = sum(1 for c in slots if acodes[lvl][c][0] > 0)
            if s * wa + db <= W and nonunit <= N:
                raise AssertionError("missing basis tuple inside the window")
            return
        w = field.add(out.get(key, field.zero()), coeff)
        if w == 0:
            out.pop(key, None)
        else:
            out[key] = w

    def degeneracy_matrix(m, i):
        a_deg = [A.components[d].degens[m][i] for d in range(max_a_weight + 1)]
        b_deg = [B.components[d].degens[m][i] for d in range(min(B.W, W) + 1)]
        unit_up = acode_index[m + 1][(0, 0)]
        cols = []
        for slots, kb in bases[m]:
            branches = [((), field.one())]
            dead = False
            for c in slots:
                img = apply_component_map(acodes[m], acodes[m][c],
                                          a_deg, acode_index[m + 1])
                if not img:
                    dead = True
                    break
                new = []
                for prefix, coeff in branches:
                    for code2, v in img.items():
                        new.append((prefix + (code2,), field.mul(coeff, v)))
                branches = new
            if dead:
                cols.append({})
                continue
            img_b = apply_component_map(bcodes[m], bcodes[m][kb],
                                        b_deg, bcode_index[m + 1])
            out = {}
            for prefix, coeff in branches:
                lifted = list(prefix)
                new_slots = tuple(lifted[:i] + [unit_up] + lifted[i:])
                for kb2, vb in img_b.items():
                    key = index[m + 1].get((new_slots, kb2))
                    if key is None:
                        raise AssertionError("degeneracy left the window")
                    w = field.add(out.get(key, field.zero()),
                                  field.mul(coeff, vb))
                    if w == 0:
                        out.pop(key, None)
                    else:
                        out[key] = w
            cols.append(out)
        return Mat(field, dims[m + 1], dims[m], cols)

    faces = [[]]
    for m in range(1, T + 1):
        faces.append([face_matrix(m, i) for i in range(m + 1)])
    degens = []
    for m in range(T):
        degens.append([degeneracy_matrix(m, i) for i in range(m + 1)])
    degens.append([])
    return SimplicialVectorSpace(field, dims, faces, degens)


# --------------------------------------------------------------------------
# cofiber reports


class CofiberReport:
    """Homotopy table of a bar cofiber with per-degree certification, plus
    the closed-form homology table where one is available."""

    def __init__(self, r, s, bounds, pi_dims, pi_flags, hq_dims,
                 certified_degree, notes=()):
        self.r = r
        self.s = s
        self.bounds = dict(bounds)
        self.pi_dims = list(pi_dims)
        self.pi_flags = list(pi_flags)
        self.hq_dims = hq_dims
        self.certified_degree = certified_degree
        self.notes = list(notes)

    def to_json_dict(self):
        return {
            "r": self.r,
            "s": self.s,
            "bounds": self.bounds,
            "pi": list(self.pi_dims),
            "pi_certified_flags": [bool(b) for b in self.pi_flags],
            "hq": {str(k): v for k, v in sorted(self.hq_dims.data.items())},
            "certified_degree": self.certified_degree,
            "notes": list(self.notes),
        }


def cofiber_homotopy(f, N, T, W):
    """Homotopy dims of the bar diagonal with per-degree stability flags.

    Runs the construction at (N, W) and (N+1, W+1); a degree is flagged
    when both runs agree at and below it inside the certified range.
    """
    base = bar_diagonal(f, N, T, W).homotopy_dims()
    big_f = f.rebuilt(
        source_W=max(f.source.W, (W + 1) // f.weight_ratio if f.weight_ratio else 1, 1),
        target_W=max(f.target.W, W + 1),
    )
    check = bar_diagonal(big_f, N + 1, T, W + 1).homotopy_dims()
    certified = min(base.certified_degree, check.certified_degree)
    flags = []
    for m in range(T + 1):
        ok = m <= certified and all(base[j] == check[j] for j in range(m + 1))
        flags.append(bool(ok))
    return base, flags, certified


def power_cofiber_tables(r, s, T=None, W=None, N=None):
    """Cofiber of the map representing the s-th power of the degree-2r
    polynomial generator, rationally: computed homotopy against the closed
    form 1 at degrees 2ri (0 <= i < s), homology reported as 1 at 2r and
    at 2rs+1.

    A disagreement inside the certified range raises TableMismatch.  For
    s = 1 the closed forms of the two tables disagree with each other (the
    cofiber of an equivalence is trivial, yet the generic-homology table
    puts classes at 2r and 2r+1); the homotopy table is authoritative here
    and the homology entries carry a note.
    """
    from .exactfield import QQ

    if r < 1 or s < 1:
        raise ValueError("need r >= 1 and s >= 1")
    if T is None:
        T = 2 * r * s + 2
    if W is None:
        W = max(s, math.ceil((T - 1) / (2 * r)))
    if N is None:
        N = W
    nB = 2 * r
    nA = 2 * r * s
    if T < nA:
        raise ValueError("level bound below the source generator degree")
    target = sphere_algebra(QQ, 1, nB, T, W + 1)
    if s == 1:
        class_vec = {0: QQ.one()}
    else:
        comp = target.components[s]
        ncx = comp.normalized_chains()
        reps, _ = ncx.homology_reps(nA)
        if reps.ncols != 1:
            raise AssertionError("power class is not one-dimensional")
        class_vec = dict(reps.cols[0])
    f = representing_map(target, nA, s, class_vec,
                         source_W=max(1, (W + 1) // s))
    pi, flags, certified = cofiber_homotopy(f, N, T, W)
    notes = []
    expected = {m: (1 if m % nB == 0 and m // nB < s else 0)
                for m in range(T + 1)}
    for m in range(certified + 1):
        if flags[m] and pi[m] != expected[m]:
            raise TableMismatch(
                "pi_%d of the (r=%d, s=%d) cofiber is %d, table says %d"
                % (m, r, s, pi[m], expected[m])
            )
    hq = GradedDims({nB: 1, nA + 1: 1})
    if s == 1:
        notes.append(
            "s=1: homotopy is that of the ground field; the generic homology "
            "table (classes at %d and %d) does not apply to the trivial "
            "cofiber and is reported verbatim" % (nB, nA + 1)
        )
    if nA + 1 > certified:
        notes.append(
            "homology class at degree %d lies beyond the certified range "
            "and is reported from the closed form" % (nA + 1)
        )
    return CofiberReport(
        r, s,
        {"N": N, "T": T, "W": W},
        [pi[m] for m in range(T + 1)],
        flags,
        hq,
        certified,
        notes,
    )


# --------------------------------------------------------------------------
# long-exact-sequence feasibility


class LesVerdict:
    def __init__(self, feasible, ranks, violation):
        self.feasible = feasible
        self.ranks = ranks
        self.violation = violation

    def __bool__(self):
        return self.feasible

    def __repr__(self):
        if self.feasible:
            return "LesVerdict(feasible)"
        return "LesVerdict(infeasible at %s)" % (self.violation,)


def les_feasibility(hqA, hqB, hqC):
    """Can an exact sequence ... -> C_{s+1} -> A_s -> B_s -> C_s -> ... have
    these dimensions?

    Exactness forces rank_in + rank_out = dim at every node, so the ranks
    propagate uniquely from the top; the dimensions are feasible exactly
    when the propagation stays nonnegative and closes at zero.
    """
    tops = [g.top() for g in (hqA, hqB, hqC) if g.top() is not None]
    if not tops:
        return LesVerdict(True, {}, None)
    top = max(tops)
    ranks = {}
    r = 0
    for deg in range(top, -1, -1):
        for name, g in (("A", hqA), ("B", hqB), ("C", hqC)):
            d = g[deg]
            out = d - r
            if out < 0:
                return LesVerdict(False, ranks, (name, deg))
            ranks[(name, deg)] = out
            r = out
    if r != 0:
        return LesVerdict(False, ranks, ("end", -1))
    return LesVerdict(True, ranks, None)
