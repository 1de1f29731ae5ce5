"""Exact linear algebra over the prime fields F_p and over the rationals.

Everything downstream (chain complexes, homotopy groups, bar constructions)
reduces to rank and kernel computations done here.  Two hard requirements
shape the module:

* arithmetic is exact, never floating point: F_p elements are canonical
  integers in 0..p-1, rational entries are ``fractions.Fraction``;
* elimination is deterministic: columns are processed left to right and
  the pivot of a reduced column is its smallest nonzero row index, so a
  given matrix always produces bit-for-bit identical ranks, kernels and
  echelon data.

Matrices are stored column-sparse (one dict per column), which keeps the
very sparse face/degeneracy/multiplication matrices of the simplicial
machinery cheap.  Over F_2 the echelon engine switches to bitmask columns
(Python big ints), same pivot policy, same results.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Raised for invalid field specs or field/entry mismatches."""


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldSpec:
    """The ground field: characteristic 0 (rationals) or a prime p (F_p)."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic):
        if characteristic != 0 and not _is_prime(characteristic):
            raise FieldError(
                "characteristic must be 0 or a prime, got %r" % (characteristic,)
            )
        self.characteristic = characteristic

    @property
    def p(self):
        return self.characteristic

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and other.characteristic == self.characteristic
        )

    def __hash__(self):
        return hash(("FieldSpec", self.characteristic))

    def __repr__(self):
        if self.characteristic == 0:
            return "FieldSpec(0)"
        return "FieldSpec(%d)" % self.characteristic

    # -- element arithmetic -------------------------------------------

    def element(self, x):
        """Canonicalize x as a field element; reject mismatched values."""
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            raise FieldError("rational entries must be int or Fraction, got %r" % (x,))
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError("denominator of %r not invertible mod %d" % (x, p))
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, int):
            return x % p
        raise FieldError("F_%d entries must be integers, got %r" % (p, x))

    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        p = self.characteristic
        if p == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        return pow(a, -1, p)


QQ = FieldSpec(0)
GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


class Mat:
    """Column-sparse exact matrix over a FieldSpec.

    ``cols[j]`` maps row index to a nonzero field element.  Shapes with
    zero rows or columns are legal and common (empty chain groups).
    """

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field, nrows, ncols, cols=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimensions")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [dict() for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = cols

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        """Build from a dense list of row lists (entries canonicalized)."""
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                v = field.element(x)
                if v != 0:
                    cols[j][i] = v
        return cls(field, nrows, ncols, cols)

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries):
        """Build from {(row, col): value}."""
        cols = [dict() for _ in range(ncols)]
        for (i, j), x in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError("entry out of range")
            v = field.element(x)
            if v != 0:
                cols[j][i] = v
        return cls(field, nrows, ncols, cols)

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        one = field.one()
        return cls(field, n, n, [{i: one} for i in range(n)])

    # -- basics ---------------------------------------------------------

    def copy(self):
        return Mat(self.field, self.nrows, self.ncols, [dict(c) for c in self.cols])

    def to_rows(self):
        zero = self.field.zero()
        rows = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def is_zero(self):
        return all(not c for c in self.cols)

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.cols == other.cols
        )

    def __repr__(self):
        return "Mat(%r, %dx%d, nnz=%d)" % (
            self.field,
            self.nrows,
            self.ncols,
            self.nnz(),
        )

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        F = self.field
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                w = F.add(c.get(i, F.zero()), v)
                if w == 0:
                    c.pop(i, None)
                else:
                    c[i] = w
            cols.append(c)
        return Mat(F, self.nrows, self.ncols, cols)

    def __neg__(self):
        F = self.field
        return Mat(
            F,
            self.nrows,
            self.ncols,
            [{i: F.neg(v) for i, v in c.items()} for c in self.cols],
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        F = self.field
        a = F.element(a)
        if a == 0:
            return Mat.zero(F, self.nrows, self.ncols)
        return Mat(
            F,
            self.nrows,
            self.ncols,
            [{i: F.mul(a, v) for i, v in c.items()} for c in self.cols],
        )

    def __matmul__(self, other):
        """Composition self @ other, i.e. (self o other) on column vectors."""
        if not isinstance(other, Mat):
            return NotImplemented
        if self.field != other.field:
            raise FieldError("field mismatch in matrix product")
        if self.ncols != other.nrows:
            raise ValueError(
                "shape mismatch: %dx%d @ %dx%d"
                % (self.nrows, self.ncols, other.nrows, other.ncols)
            )
        F = self.field
        out = []
        for bcol in other.cols:
            acc = {}
            for k, bv in bcol.items():
                for i, av in self.cols[k].items():
                    w = F.add(acc.get(i, F.zero()), F.mul(av, bv))
                    if w == 0:
                        acc.pop(i, None)
                    else:
                        acc[i] = w
            out.append(acc)
        return Mat(F, self.nrows, other.ncols, out)

    def apply(self, vec):
        """Apply to a sparse vector {index: value}; returns a sparse vector."""
        F = self.field
        acc = {}
        for k, bv in vec.items():
            for i, av in self.cols[k].items():
                w = F.add(acc.get(i, F.zero()), F.mul(av, bv))
                if w == 0:
                    acc.pop(i, None)
                else:
                    acc[i] = w
        return acc

    def transpose(self):
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v
        return Mat(self.field, self.ncols, self.nrows, cols)

    def hstack(self, other):
        self._check_same_field(other)
        if self.nrows != other.nrows:
            raise ValueError("hstack row mismatch")
        return Mat(
            self.field,
            self.nrows,
            self.ncols + other.ncols,
            [dict(c) for c in self.cols] + [dict(c) for c in other.cols],
        )

    def vstack(self, other):
        self._check_same_field(other)
        if self.ncols != other.ncols:
            raise ValueError("vstack column mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                c[i + self.nrows] = v
            cols.append(c)
        return Mat(self.field, self.nrows + other.nrows, self.ncols, cols)

    def kron(self, other):
        """Kronecker product: row/column index pairs flattened row-major."""
        self._check_same_field(other)
        F = self.field
        cols = []
        for j1 in range(self.ncols):
            c1 = self.cols[j1]
            for j2 in range(other.ncols):
                c2 = other.cols[j2]
                col = {}
                for i1, v1 in c1.items():
                    for i2, v2 in c2.items():
                        col[i1 * other.nrows + i2] = F.mul(v1, v2)
                cols.append(col)
        return Mat(F, self.nrows * other.nrows, self.ncols * other.ncols, cols)

    @classmethod
    def block_diag(cls, field, blocks):
        nrows = sum(b.nrows for b in blocks)
        cols = []
        off = 0
        for b in blocks:
            if b.field != field:
                raise FieldError("field mismatch in block_diag")
            for c in b.cols:
                cols.append({i + off: v for i, v in c.items()})
            off += b.nrows
        return cls(field, nrows, len(cols), cols)

    def _check_same_field(self, other):
        if self.field != other.field:
            raise FieldError("field mismatch")

    def _check_same_shape(self, other):
        self._check_same_field(other)
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")


class ColumnEchelon:
    """Incremental column echelon form with optional combination tracking.

    Columns are fed in one at a time and reduced against the pivots seen so
    far; a surviving column is normalized (pivot entry 1) and becomes a new
    pivot at its smallest nonzero row.  With ``track=True`` every reduction
    also returns the coefficients expressing the removed part in terms of
    the previously inserted columns, which is what homology representatives
    and linear solves need.

    Over F_2 columns are packed into int bitmasks; the pivot policy is
    unchanged so results agree with the generic path.
    """

    def __init__(self, field, nrows, track=False):
        self.field = field
        self.nrows = nrows
        self.track = track
        self.pivots = {}  # pivot row -> index into self.columns
        self.columns = []  # echelon columns (normalized)
        self.combos = []  # combos[i]: dict old-col-index -> coeff
        self.ninserted = 0
        p = field.characteristic
        self._bits = p == 2 and not track
        # untracked rank-only fast paths: integer columns up to scaling
        self._intfrac = p == 0 and not track
        self._modp = p > 2 and not track

    @property
    def rank(self):
        return len(self.columns)

    def _to_bits(self, col):
        m = 0
        for i in col:
            m |= 1 << i
        return m

    def _reduce_bits(self, m):
        while m:
            low = (m & -m).bit_length() - 1
            j = self.pivots.get(low)
            if j is None:
                return m
            m ^= self.columns[j]
        return m

    def _reduce_intfrac(self, col):
        """Integer column reduction up to positive scaling (rank only).

        Stored columns are integer with positive pivot; to kill the entry
        at a pivot row, cross-multiply (p*col - c*pivotcol) and strip the
        content, which preserves the span and keeps entries integral.
        """
        from math import gcd

        col = {i: int(v) for i, v in col.items() if v}
        while col:
            low = min(col)
            j = self.pivots.get(low)
            if j is None:
                break
            piv = self.columns[j]
            p = piv[low]
            c = col[low]
            new = {}
            g = 0
            for i in set(col) | set(piv):
                w = p * col.get(i, 0) - c * piv.get(i, 0)
                if w:
                    new[i] = w
                    g = gcd(g, w)
            if g > 1:
                new = {i: v // g for i, v in new.items()}
            col = new
        return col

    def _reduce_modp(self, col):
        p = self.field.characteristic
        col = {i: v % p for i, v in col.items() if v % p}
        while col:
            low = min(col)
            j = self.pivots.get(low)
            if j is None:
                break
            piv = self.columns[j]  # pivot entry is 1
            c = col[low]
            for i, v in piv.items():
                w = (col.get(i, 0) - c * v) % p
                if w:
                    col[i] = w
                else:
                    col.pop(i, None)
        return col

    def reduce(self, col):
        """Reduce a sparse column; return (residue, combo) (combo None if untracked).

        In the untracked rational mode the residue is only meaningful up to
        a positive rational scale (rank and membership are unaffected).
        """
        F = self.field
        if self._bits:
            m = self._reduce_bits(self._to_bits(col))
            return ({i: 1 for i in _bit_indices(m)}, None)
        if self._intfrac:
            num = {}
            den = 1
            for i, v in col.items():
                v = F.element(v)
                num[i] = v
            if num:
                from math import lcm

                den = lcm(*[v.denominator for v in num.values()]) if num else 1
                num = {i: int(v * den) for i, v in num.items()}
            return (self._reduce_intfrac(num), None)
        if self._modp:
            return (self._reduce_modp(col), None)
        col = dict(col)
        combo = {} if self.track else None
        while col:
            low = min(col)
            j = self.pivots.get(low)
            if j is None:
                break
            c = col[low]  # pivot of stored column is 1
            for i, v in self.columns[j].items():
                w = F.sub(col.get(i, F.zero()), F.mul(c, v))
                if w == 0:
                    col.pop(i, None)
                else:
                    col[i] = w
            if self.track:
                for k, v in self.combos[j].items():
                    w = F.add(combo.get(k, F.zero()), F.mul(c, v))
                    if w == 0:
                        combo.pop(k, None)
                    else:
                        combo[k] = w
        return (col, combo)

    def insert(self, col):
        """Insert a column; return (new_pivot_row or None, combo-of-reduction)."""
        F = self.field
        idx = self.ninserted
        self.ninserted += 1
        if self._bits:
            m = self._reduce_bits(self._to_bits(col))
            if not m:
                return (None, None)
            low = (m & -m).bit_length() - 1
            self.pivots[low] = len(self.columns)
            self.columns.append(m)
            return (low, None)
        if self._intfrac or self._modp:
            residue, _ = self.reduce(col)
            if not residue:
                return (None, None)
            low = min(residue)
            if self._intfrac:
                if residue[low] < 0:
                    residue = {i: -v for i, v in residue.items()}
                norm = residue
            else:
                p = self.field.characteristic
                inv = pow(residue[low], -1, p)
                norm = {i: (inv * v) % p for i, v in residue.items()}
            self.pivots[low] = len(self.columns)
            self.columns.append(norm)
            return (low, None)
        residue, combo = self.reduce(col)
        if not residue:
            return (None, combo)
        low = min(residue)
        inv = F.inv(residue[low])
        norm = {i: F.mul(inv, v) for i, v in residue.items()}
        self.pivots[low] = len(self.columns)
        self.columns.append(norm)
        if self.track:
            # normalized column = inv*col_idx - sum inv*combo[k]*col_k
            c = {idx: inv}
            for k, v in combo.items():
                w = F.neg(F.mul(inv, v))
                if w != 0:
                    c[k] = w
            self.combos.append(c)
        return (low, combo)

    def contains(self, col):
        residue, _ = self.reduce(col)
        return not residue


def _bit_indices(m):
    while m:
        low = (m & -m).bit_length() - 1
        yield low
        m ^= 1 << low


def _check_field_arg(M, field):
    if field is not None and field != M.field:
        raise FieldError(
            "matrix over %r used with field %r" % (M.field, field)
        )


def rank(M, field=None):
    """Rank of M over its field; field argument cross-checks the spec."""
    _check_field_arg(M, field)
    ech = ColumnEchelon(M.field, M.nrows)
    for col in M.cols:
        ech.insert(col)
    return ech.rank


def kernel_basis(M, field=None):
    """Matrix whose columns are a basis of ker M (deterministic choice).

    Columns are produced in order of the free columns of the echelon form;
    the result K satisfies M @ K = 0 and has ncols(M) - rank(M) columns.
    """
    _check_field_arg(M, field)
    F = M.field
    ech = ColumnEchelon(F, M.nrows, track=True)
    kernel_cols = []
    for j, col in enumerate(M.cols):
        pivot, combo = ech.insert(col)
        if pivot is None:
            # col_j = sum combo[k] * col_k, so col_j - sum ... = 0
            vec = {j: F.one()}
            for k, v in combo.items():
                w = F.neg(v)
                if w != 0:
                    vec[k] = w
            kernel_cols.append(vec)
    return Mat(F, M.ncols, len(kernel_cols), kernel_cols)


def solve(M, target, field=None):
    """One solution x of M x = target (sparse dicts), or None if unsolvable."""
    _check_field_arg(M, field)
    F = M.field
    ech = ColumnEchelon(F, M.nrows, track=True)
    for col in M.cols:
        ech.insert(col)
    residue, combo = ech.reduce(target)
    if residue:
        return None
    return dict(combo)


def homology_dim(d_in, d_out, field=None):
    """dim ker(d_out) - rank(d_in) for a composable pair with d_out o d_in = 0.

    d_in carries boundaries into the middle group, d_out maps out of it.
    """
    _check_field_arg(d_in, field)
    _check_field_arg(d_out, field)
    if d_in.field != d_out.field:
        raise FieldError("field mismatch between differentials")
    if d_out.ncols != d_in.nrows:
        raise ValueError(
            "differentials not composable: d_out has %d columns, d_in has %d rows"
            % (d_out.ncols, d_in.nrows)
        )
    if not (d_out @ d_in).is_zero():
        raise ValueError("d_out o d_in != 0")
    ker = d_out.ncols - rank(d_out)
    return ker - rank(d_in)
