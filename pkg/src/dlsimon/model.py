"""Constraint-model construction, emission and checking.

Builds the MILP/MIQCP systems describing the differential part (linear
rows over binaries), the middle part (quadratic products of continuous
variables plus ABS/LOG2 general constraints) and the linear part (XOR rows,
AND chains and parity rows), mirrors of the engines' round functions. No
solver is embedded: models are emitted as deterministic LP-dialect text for
external solvers, and concrete assignments are checked internally.

Variable names follow part_symbol_round_bit, e.g. d_alpha_3_7; doubly
indexed chain variables carry the level too, e.g. l_tmp_0_2_15 for
tmp^(2) of round 0 at bit 15.

Index conventions: all equations are emitted in the engine-validated
orientation (bit i of S^t(x) is x at bit i-t mod n); where the published
subscript signs disagree with the exhaustive oracles, the oracle wins and
the emitted file carries a comment saying so.

Per-round bookkeeping (reported in `counters` and asserted by tests):
  differential: 18n+2 constraint rows from the varibits/doublebits/gamma/
    probits families plus the 4n branch-XOR block; 6n+1 declared variables.
  linear: 8n^2+8n+2 rows, 3n^2+4n+1 declared variables per round. The
    published variable count includes the tmp^(0) vector even though the
    equations substitute lam^(r+1) for it; this model declares tmp^(0) and
    ties it with n structural alias rows, which are counted separately so
    both published per-round formulas hold exactly.
  middle: exactly 3n*rm + 6n + 1 constraints and 3n*rm + 6n + 1 variables
    (the published variable formula says +rm instead of +1; the exact value
    is documented here and the criterion uses the published "about" form).
"""

import math
from dataclasses import dataclass, field


@dataclass
class Variable:
    name: str
    kind: str            # "binary" | "integer" | "continuous"
    lb: float
    ub: float


@dataclass
class LinRow:
    name: str
    terms: tuple         # ((coeff, var), ...)
    sense: str           # "<=", ">=", "="
    rhs: float
    family: str = ""


@dataclass
class QuadRow:
    name: str
    lin_terms: tuple
    quad_terms: tuple    # ((coeff, u, v), ...)
    sense: str
    rhs: float
    family: str = ""


@dataclass
class GenRow:
    name: str
    kind: str            # "ABS" | "LOG2" | "AND"
    out: str
    args: tuple
    family: str = ""


@dataclass
class ConstraintModel:
    name: str
    variables: dict = field(default_factory=dict)
    linear: list = field(default_factory=list)
    quadratic: list = field(default_factory=list)
    general: list = field(default_factory=list)
    objective_sense: str = "minimize"
    objective: tuple = ()
    comments: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    handles: dict = field(default_factory=dict)

    def add_var(self, name, kind, lb, ub):
        if name in self.variables:
            raise ValueError("duplicate variable %s" % name)
        self.variables[name] = Variable(name, kind, lb, ub)
        return name

    def add_binaries(self, prefix, n):
        return [self.add_var("%s_%d" % (prefix, i), "binary", 0, 1)
                for i in range(n)]

    def add_lin(self, name, terms, sense, rhs, family=""):
        for _, v in terms:
            self._check(v)
        self.linear.append(LinRow(name, tuple(terms), sense, rhs, family))

    def add_quad(self, name, lin_terms, quad_terms, sense, rhs, family=""):
        for _, v in lin_terms:
            self._check(v)
        for _, u, v in quad_terms:
            self._check(u)
            self._check(v)
        self.quadratic.append(
            QuadRow(name, tuple(lin_terms), tuple(quad_terms), sense, rhs,
                    family))

    def add_gen(self, name, kind, out, args, family=""):
        self._check(out)
        for a in args:
            self._check(a)
        self.general.append(GenRow(name, kind, out, tuple(args), family))

    def _check(self, v):
        if v not in self.variables:
            raise ValueError("undeclared variable %s" % v)

    def set_objective(self, terms, sense="minimize"):
        for _, v in terms:
            self._check(v)
        self.objective = tuple(terms)
        self.objective_sense = sense

    def family_count(self, *families):
        total = 0
        for row in self.linear + self.quadratic + self.general:
            if row.family in families:
                total += 1
        return total

    def stats(self):
        kinds = {"binary": 0, "integer": 0, "continuous": 0}
        for v in self.variables.values():
            kinds[v.kind] += 1
        return {
            "variables": len(self.variables),
            "binary": kinds["binary"],
            "integer": kinds["integer"],
            "continuous": kinds["continuous"],
            "linear_constraints": len(self.linear),
            "quadratic_constraints": len(self.quadratic),
            "general_constraints": len(self.general),
            "constraints": (len(self.linear) + len(self.quadratic)
                            + len(self.general)),
        }


def _xor3(model, name, x, y, z, family):
    """Rows forcing z = x ^ y over binaries."""
    model.add_lin(name + "a", ((1, x), (1, y), (-1, z)), ">=", 0, family)
    model.add_lin(name + "b", ((1, x), (-1, y), (1, z)), ">=", 0, family)
    model.add_lin(name + "c", ((-1, x), (1, y), (1, z)), ">=", 0, family)
    model.add_lin(name + "d", ((1, x), (1, y), (1, z)), "<=", 2, family)


def _xor4(model, name, w, x, y, z, family):
    """Rows forcing z = w ^ x ^ y over binaries (even-parity CNF)."""
    combos = [
        ((1, 1, 1, -1), ">=", 0), ((1, 1, -1, 1), ">=", 0),
        ((1, -1, 1, 1), ">=", 0), ((-1, 1, 1, 1), ">=", 0),
        ((1, 1, 1, -1), "<=", 2), ((1, 1, -1, 1), "<=", 2),
        ((1, -1, 1, 1), "<=", 2), ((-1, 1, 1, 1), "<=", 2),
    ]
    for k, (signs, sense, rhs) in enumerate(combos):
        terms = tuple(zip(signs, (w, x, y, z)))
        model.add_lin("%s%c" % (name, ord("a") + k), terms, sense, rhs,
                      family)


def add_diff_round(model, r, spec, alpha, prefix="d"):
    """One differential round; alpha maps index -> variable name lists with
    alpha[r], alpha[r+1] present, alpha[r+2] added here. Returns the name
    of the round's pro variable."""
    n = spec.n
    a, b, c, d = spec.a, spec.b, spec.c, spec.a - spec.b
    cur = alpha[r + 1]
    beta = model.add_binaries("%s_beta_%d" % (prefix, r), n)
    gamma = model.add_binaries("%s_gamma_%d" % (prefix, r), n)
    vari = model.add_binaries("%s_varibits_%d" % (prefix, r), n)
    dbl = model.add_binaries("%s_doublebits_%d" % (prefix, r), n)
    probits = model.add_binaries("%s_probits_%d" % (prefix, r), n)
    pro = model.add_var("%s_pro_%d" % (prefix, r), "integer", 0, n)
    nxt = model.add_binaries("%s_alpha_%d" % (prefix, r + 2), n)
    alpha[r + 2] = nxt

    for i in range(n):
        ia, ib, ic = (i - a) % n, (i - b) % n, (i - c) % n
        idd = (i - (2 * a - b)) % n
        # varibits_i = alpha_(i-a) | alpha_(i-b)
        f = "diff_varibits"
        model.add_lin("dv%d_%da" % (r, i),
                      ((1, vari[i]), (-1, cur[ia])), ">=", 0, f)
        model.add_lin("dv%d_%db" % (r, i),
                      ((1, vari[i]), (-1, cur[ib])), ">=", 0, f)
        model.add_lin("dv%d_%dc" % (r, i),
                      ((1, cur[ia]), (1, cur[ib]), (-1, vari[i])), ">=", 0, f)
        # doublebits_i = alpha_(i-b) & ~alpha_(i-a) & alpha_(i-2a+b)
        f = "diff_doublebits"
        model.add_lin("dd%d_%da" % (r, i),
                      ((1, dbl[i]), (1, cur[ia])), "<=", 1, f)
        model.add_lin("dd%d_%db" % (r, i),
                      ((1, dbl[i]), (-1, cur[ib])), "<=", 0, f)
        model.add_lin("dd%d_%dc" % (r, i),
                      ((1, dbl[i]), (-1, cur[idd])), "<=", 0, f)
        model.add_lin("dd%d_%dd" % (r, i),
                      ((1, dbl[i]), (1, cur[ia]), (-1, cur[ib]),
                       (-1, cur[idd])), ">=", -1, f)
        # beta_i = gamma_i ^ alpha_(i-c)
        _xor3(model, "db%d_%d" % (r, i), gamma[i], cur[ic], beta[i],
              "diff_beta")
        # gamma conditions
        f = "diff_gamma"
        model.add_lin("dg%d_%da" % (r, i),
                      ((1, gamma[i]), (-1, vari[i])), "<=", 0, f)
        model.add_lin("dg%d_%db" % (r, i),
                      ((1, gamma[i]), (-1, gamma[(i - d) % n]), (1, dbl[i])),
                      "<=", 1, f)
        model.add_lin("dg%d_%dc" % (r, i),
                      ((-1, gamma[i]), (1, gamma[(i - d) % n]), (1, dbl[i])),
                      "<=", 1, f)
        # probits_i = varibits_i ^ doublebits_i
        _xor3(model, "dp%d_%d" % (r, i), vari[i], dbl[i], probits[i],
              "diff_probits")
    # weight of alpha below n (all-ones excluded)
    model.add_lin("dw%d" % r, tuple((1, v) for v in cur), "<=", n - 1,
                  "diff_alpha_wt")
    model.add_lin("dpro%d" % r,
                  tuple((1, v) for v in probits) + ((-1, pro),), "=", 0,
                  "diff_probits")
    # branch XOR: alpha^(r+2) = beta ^ alpha^r
    for i in range(n):
        _xor3(model, "dx%d_%d" % (r, i), beta[i], alpha[r][i], nxt[i],
              "diff_branch_xor")
    return pro


def build_diff_model(rd, spec, model=None, prefix="d"):
    """Differential part over rd rounds. Handles: Pro, alpha (per index)."""
    if rd < 1:
        raise ValueError("rd must be >= 1")
    n = spec.n
    m = model if model is not None else ConstraintModel(
        "diff_%s_%dr" % (spec.name, rd))
    alpha = {0: m.add_binaries(prefix + "_alpha_0", n),
             1: m.add_binaries(prefix + "_alpha_1", n)}
    m.add_lin("dnontriv",
              tuple((1, v) for v in alpha[0] + alpha[1]), ">=", 1,
              "diff_nontrivial")
    pros = []
    for r in range(rd):
        pros.append(add_diff_round(m, r, spec, alpha, prefix))
    total = m.add_var(prefix + "_Pro", "integer", 0, n * rd)
    m.add_lin("dProsum", tuple((1, p) for p in pros) + ((-1, total),),
              "=", 0, "diff_pro_sum")
    m.counters["diff_rounds"] = rd
    m.counters["diff_round_constraints"] = 18 * n + 2
    m.counters["diff_round_variables"] = 6 * n + 1
    m.counters["diff_branch_xor_per_round"] = 4 * n
    m.handles["Pro"] = total
    m.handles["alpha"] = alpha
    if model is None:
        m.set_objective(((1, total),))
    return m


def add_middle_part(model, rm, spec, alpha_left, alpha_right, lam0, lam1,
                    prefix="m"):
    """Middle part rounds plus the Cor_m extraction.

    alpha_left/right are binary vectors for the entry difference; lam0/lam1
    binary vectors for the exit mask (None builds free binaries). Returns
    the Cor_m variable name.
    """
    n = spec.n
    a, b, c = spec.a, spec.b, spec.c
    x = {0: [model.add_var("%s_x_0_%d" % (prefix, i), "continuous", -1, 1)
             for i in range(n)],
         1: [model.add_var("%s_x_1_%d" % (prefix, i), "continuous", -1, 1)
             for i in range(n)]}
    # initialisation x = 1 - 2*bit
    for i in range(n):
        model.add_lin("mi1_%d" % i, ((1, x[1][i]), (2, alpha_left[i])),
                      "=", 1, "mid_init")
        model.add_lin("mi0_%d" % i, ((1, x[0][i]), (2, alpha_right[i])),
                      "=", 1, "mid_init")
    for r in range(rm):
        y = [model.add_var("%s_y_%d_%d" % (prefix, r, i), "continuous", 0, 1)
             for i in range(n)]
        t = [model.add_var("%s_t_%d_%d" % (prefix, r, i), "continuous", -1, 1)
             for i in range(n)]
        nxt = [model.add_var("%s_x_%d_%d" % (prefix, r + 2, i),
                             "continuous", -1, 1) for i in range(n)]
        left, right = x[r + 1], x[r]
        for i in range(n):
            ia, ib, ic = (i - a) % n, (i - b) % n, (i - c) % n
            # 4 y_i = 1 + x_(i-a) + x_(i-b) + x_(i-a) x_(i-b)
            model.add_quad("my%d_%d" % (r, i),
                           ((4, y[i]), (-1, left[ia]), (-1, left[ib])),
                           ((-1, left[ia], left[ib]),), "=", 1, "mid_and")
            # t_i = y_i x_i(right);  x'_i = t_i x_(i-c)
            model.add_quad("mt%d_%d" % (r, i), ((1, t[i]),),
                           ((-1, y[i], right[i]),), "=", 0, "mid_xor")
            model.add_quad("mx%d_%d" % (r, i), ((1, nxt[i]),),
                           ((-1, t[i], left[ic]),), "=", 0, "mid_xor")
        x[r + 2] = nxt
    # |.| and log2 extraction on the final state
    z0 = [model.add_var("%s_z0_%d" % (prefix, i), "continuous", 0, 1)
          for i in range(n)]
    z1 = [model.add_var("%s_z1_%d" % (prefix, i), "continuous", 0, 1)
          for i in range(n)]
    z2 = [model.add_var("%s_z2_%d" % (prefix, i), "continuous",
                        -math.inf, 0) for i in range(n)]
    z3 = [model.add_var("%s_z3_%d" % (prefix, i), "continuous",
                        -math.inf, 0) for i in range(n)]
    corm = model.add_var(prefix + "_Cor", "continuous", -math.inf, 0)
    for i in range(n):
        model.add_gen("ma0_%d" % i, "ABS", z0[i], (x[rm + 1][i],), "mid_abs")
        model.add_gen("ma1_%d" % i, "ABS", z1[i], (x[rm][i],), "mid_abs")
        model.add_gen("ml0_%d" % i, "LOG2", z2[i], (z0[i],), "mid_log")
        model.add_gen("ml1_%d" % i, "LOG2", z3[i], (z1[i],), "mid_log")
    quad = [(-1, lam0[i], z2[i]) for i in range(n)]
    quad += [(-1, lam1[i], z3[i]) for i in range(n)]
    model.add_quad("mcor", ((1, corm),), tuple(quad), "=", 0, "mid_cor")
    model.counters["middle_rounds"] = rm
    model.counters["middle_constraints_exact"] = 3 * n * rm + 6 * n + 1
    model.counters["middle_variables_exact"] = 3 * n * rm + 6 * n + 1
    model.handles["Cor_m"] = corm
    model.handles["x"] = x
    return corm


def build_middle_model(rm, spec, diff_handles=None, mask_handles=None):
    """Standalone middle model; free boundary binaries are declared when
    the differential / mask handles are not supplied."""
    if rm < 1:
        raise ValueError("rm must be >= 1")
    n = spec.n
    m = ConstraintModel("middle_%s_%dr" % (spec.name, rm))
    if diff_handles is None:
        aleft = m.add_binaries("d_alpha_1", n)
        aright = m.add_binaries("d_alpha_0", n)
    else:
        aleft, aright = diff_handles
    if mask_handles is None:
        lam0 = m.add_binaries("l_lam_0", n)
        lam1 = m.add_binaries("l_lam_1", n)
    else:
        lam0, lam1 = mask_handles
    corm = add_middle_part(m, rm, spec, aleft, aright, lam0, lam1)
    m.set_objective(((-1, corm),))
    return m


def add_lin_round(model, r, spec, lam, prefix="l"):
    """One linear round; lam[r], lam[r+1] present, lam[r+2] added. Returns
    the round's Cor variable name."""
    n = spec.n
    a, b, c = spec.a, spec.b, spec.c
    d = a - b
    cur = lam[r + 1]
    nxt = model.add_binaries("%s_lam_%d" % (prefix, r + 2), n)
    lam[r + 2] = nxt
    lam_in = model.add_binaries("%s_lamin_%d" % (prefix, r), n)
    abits = model.add_binaries("%s_abits_%d" % (prefix, r), n)
    nvar = [model.add_var("%s_N_%d_%d" % (prefix, r, i), "integer", 0,
                          (n + 1) // 2 + 1) for i in range(n)]
    tmp = [model.add_binaries("%s_tmp_%d_%d" % (prefix, r, j), n)
           for j in range(n)]
    sb = [model.add_binaries("%s_sbits_%d_%d" % (prefix, r, j), n)
          for j in range(n)]
    pb = [model.add_binaries("%s_pbits_%d_%d" % (prefix, r, j), n)
          for j in range(n)]
    cor = model.add_var("%s_cor_%d" % (prefix, r), "integer", 0, n)

    # structural alias tmp^(0) = lam^(r+1) (the published equations
    # substitute it; an LP file needs the explicit rows)
    for i in range(n):
        model.add_lin("lt0_%d_%d" % (r, i),
                      ((1, tmp[0][i]), (-1, cur[i])), "=", 0, "lin_alias")

    for i in range(n):
        ic = (i + c) % n
        ia, ib = (i + a) % n, (i + b) % n
        # lam_in_i = lam^r_i ^ lam^(r+2)_i ^ lam^(r+1)_(i+c)
        _xor4(model, "li%d_%d" % (r, i), lam[r][i], nxt[i], cur[ic],
              lam_in[i], "lin_lamin")
        # support: lam_in_i <= lam^(r+1)_(i+a) | lam^(r+1)_(i+b)
        model.add_lin("ls%d_%d" % (r, i),
                      ((1, cur[ia]), (1, cur[ib]), (-1, lam_in[i])), ">=", 0,
                      "lin_lamin")
    # weight of lam^(r+1) below n
    model.add_lin("lw%d" % r, tuple((1, v) for v in cur), "<=", n - 1,
                  "lin_lam_wt")
    # tmp chains: tmp^(j+1)_i = tmp^(j)_i & lam^(r+1)_(i+(j+1)(a-b))
    for j in range(n - 1):
        for i in range(n):
            model.add_gen("ltc%d_%d_%d" % (r, j, i), "AND", tmp[j + 1][i],
                          (tmp[j][i], cur[(i + (j + 1) * d) % n]), "lin_tmp")
    # abits parity: sum_j tmp^(j)_i + abits_i = 2 N_i
    for i in range(n):
        terms = tuple((1, tmp[j][i]) for j in range(n))
        model.add_lin("la%d_%d" % (r, i),
                      terms + ((1, abits[i]), (-2, nvar[i])), "=", 0,
                      "lin_abits")
    # sbits / pbits chains
    for i in range(n):
        ia, ib = (i + a) % n, (i + b) % n
        f = "lin_sbits"
        model.add_lin("lsb%d_%da" % (r, i),
                      ((-1, abits[ia]), (-1, sb[0][i])), ">=", -1, f)
        model.add_lin("lsb%d_%db" % (r, i),
                      ((-1, cur[ib]), (-1, sb[0][i])), ">=", -1, f)
        model.add_lin("lsb%d_%dc" % (r, i),
                      ((-1, cur[ia]), (1, cur[ib]), (1, abits[ia]),
                       (1, sb[0][i])), ">=", 0, f)
        model.add_lin("lsb%d_%dd" % (r, i),
                      ((1, cur[ia]), (-1, sb[0][i])), ">=", 0, f)
        # pbits^(0)_(i+2(a-b)) = sbits^(0)_i & lam_in_i
        model.add_gen("lpb%d_0_%d" % (r, i), "AND",
                      pb[0][(i + 2 * d) % n], (sb[0][i], lam_in[i]),
                      "lin_pbits")
    for j in range(n - 1):
        for i in range(n):
            # sbits^(j+1)_(i+2(a-b)) = sbits^(j)_i & gate; the gate bit for
            # target position p is lam^(r+1)_(p - (a-2b)).
            p = (i + 2 * d) % n
            gate = cur[(p - (a - 2 * b)) % n]
            model.add_gen("lsc%d_%d_%d" % (r, j, i), "AND", sb[j + 1][p],
                          (sb[j][i], gate), "lin_sbits")
            # pbits update pb^(j+1)_(q+2d) = pb^(j)_q ^ (sb^(j+1)_q & lamin_q)
            # as six direct rows over (S, L, P, P') with no auxiliary
            q = i
            s_v = sb[j + 1][q]
            l_v = lam_in[q]
            p_v = pb[j][q]
            o_v = pb[j + 1][(q + 2 * d) % n]
            f = "lin_pbits"
            nm = "lpx%d_%d_%d" % (r, j, q)
            model.add_lin(nm + "a", ((1, l_v), (-1, p_v), (1, o_v)),
                          ">=", 0, f)
            model.add_lin(nm + "b", ((1, l_v), (1, p_v), (-1, o_v)),
                          ">=", 0, f)
            model.add_lin(nm + "c", ((-1, s_v), (-1, l_v), (1, p_v),
                                     (1, o_v)), ">=", -1, f)
            model.add_lin(nm + "d", ((-1, s_v), (-1, l_v), (-1, p_v),
                                     (-1, o_v)), ">=", -3, f)
            model.add_lin(nm + "e", ((1, s_v), (-1, p_v), (1, o_v)),
                          ">=", 0, f)
            model.add_lin(nm + "f", ((1, s_v), (1, p_v), (-1, o_v)),
                          ">=", 0, f)
    for i in range(n):
        model.add_lin("lpz%d_%d" % (r, i), ((1, pb[n - 1][i]),), "=", 0,
                      "lin_pbits")
    model.add_lin("lcor%d" % r,
                  tuple((1, v) for v in abits) + ((-1, cor),), "=", 0,
                  "lin_cor")
    return cor


def build_lin_model(rl, spec, model=None, prefix="l"):
    """Linear part over rl rounds. Handles: Cor_l, lam (per index)."""
    if rl < 1:
        raise ValueError("rl must be >= 1")
    n = spec.n
    m = model if model is not None else ConstraintModel(
        "lin_%s_%dr" % (spec.name, rl))
    lam = {0: m.add_binaries(prefix + "_lam_0", n),
           1: m.add_binaries(prefix + "_lam_1", n)}
    m.add_lin("lnontriv", tuple((1, v) for v in lam[0] + lam[1]), ">=", 1,
              "lin_nontrivial")
    cors = []
    for r in range(rl):
        cors.append(add_lin_round(m, r, spec, lam, prefix))
    total = m.add_var(prefix + "_Cor_l", "integer", 0, n * rl)
    m.add_lin("lCorsum", tuple((1, cc) for cc in cors) + ((-1, total),),
              "=", 0, "lin_cor_sum")
    m.counters["lin_rounds"] = rl
    m.counters["lin_round_constraints"] = 8 * n * n + 8 * n + 2
    m.counters["lin_round_variables"] = 3 * n * n + 4 * n + 1
    m.counters["lin_alias_per_round"] = n
    m.handles["Cor_l"] = total
    m.handles["lam"] = lam
    if model is None:
        m.set_objective(((1, total),))
    return m


def build_full_model(config, spec):
    """Merged differential + middle + linear model with the objective
    Cor_e = Pro - Cor_m + 2 Cor_l, minimised."""
    rd, rm, rl = config.rd, config.rm, config.rl
    m = ConstraintModel("full_%s_%d_%d_%d" % (spec.name, rd, rm, rl))
    build_diff_model(rd, spec, model=m)
    build_lin_model(rl, spec, model=m)
    alpha = m.handles["alpha"]
    lam = m.handles["lam"]
    add_middle_part(m, rm, spec, alpha[rd + 1], alpha[rd], lam[0], lam[1])
    core = m.add_var("e_Cor", "continuous", -math.inf, math.inf)
    m.add_lin("eCor", ((1, m.handles["Pro"]), (-1, m.handles["Cor_m"]),
                       (2, m.handles["Cor_l"]), (-1, core)), "=", 0,
              "merge")
    m.set_objective(((1, core),))
    m.handles["Cor_e"] = core
    m.comments.append("objective Cor_e = Pro - Cor_m + 2 Cor_l")
    return m


# ---------------------------------------------------------------- emission

_SENSE = {"<=": "<=", ">=": ">=", "=": "="}


def _num(x):
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _lin_text(terms):
    parts = []
    for coeff, var in terms:
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        parts.append("%s %s %s" % (sign, _num(mag), var))
    if not parts:
        return "0"
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else out


def emit_model(model, destination=None):
    """Deterministic LP-dialect text; general constraints use the forms
    v = ABS ( u ), v = LOG_2 ( u ), v = AND ( u1 , u2 )."""
    lines = []
    add = lines.append
    add("\\ model %s" % model.name)
    add("\\ index convention: bit i of S^t(x) is x[(i - t) mod n];"
        " published subscript signs corrected to the oracle-validated form")
    for comment in model.comments:
        add("\\ %s" % comment)
    for key in sorted(model.counters):
        add("\\ counter %s = %s" % (key, model.counters[key]))
    add("Minimize" if model.objective_sense == "minimize" else "Maximize")
    add(" obj: %s" % _lin_text(model.objective))
    add("Subject To")
    for row in model.linear:
        add(" %s: %s %s %s" % (row.name, _lin_text(row.terms),
                               _SENSE[row.sense], _num(row.rhs)))
    for row in model.quadratic:
        lin = _lin_text(row.lin_terms)
        qparts = []
        for coeff, u, v in row.quad_terms:
            sign = "-" if coeff < 0 else "+"
            qparts.append("%s %s %s * %s" % (sign, _num(abs(coeff)), u, v))
        quad = " ".join(qparts)
        if quad.startswith("+ ") and not row.lin_terms:
            quad = quad[2:]
        body = ("%s + [ %s ]" % (lin, quad) if row.lin_terms
                else "[ %s ]" % quad)
        add(" %s: %s %s %s" % (row.name, body, _SENSE[row.sense],
                               _num(row.rhs)))
    add("Bounds")
    for name in model.variables:
        v = model.variables[name]
        if v.kind == "binary":
            continue
        lb = "-inf" if v.lb == -math.inf else _num(v.lb)
        ub = "+inf" if v.ub == math.inf else _num(v.ub)
        add(" %s <= %s <= %s" % (lb, name, ub))
    binaries = [v.name for v in model.variables.values()
                if v.kind == "binary"]
    integers = [v.name for v in model.variables.values()
                if v.kind == "integer"]
    if binaries:
        add("Binaries")
        for chunk_start in range(0, len(binaries), 8):
            add(" " + " ".join(binaries[chunk_start:chunk_start + 8]))
    if integers:
        add("Generals")
        for chunk_start in range(0, len(integers), 8):
            add(" " + " ".join(integers[chunk_start:chunk_start + 8]))
    if model.general:
        add("General Constraints")
        for row in model.general:
            kind = {"ABS": "ABS", "LOG2": "LOG_2", "AND": "AND"}[row.kind]
            add(" %s: %s = %s ( %s )" % (row.name, row.out, kind,
                                         " , ".join(row.args)))
    add("End")
    text = "\n".join(lines) + "\n"
    if destination is not None:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def parse_model(text):
    """Re-read emitted text into a ConstraintModel (round-trip checking)."""
    m = ConstraintModel("parsed")
    section = None
    pending_kinds = {}
    rows = []
    objective = None
    sense = "minimize"
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            if line.startswith("\\ counter "):
                key, _, val = line[10:].partition(" = ")
                m.counters[key] = int(val)
            continue
        low = line.lower()
        if low in ("minimize", "maximize"):
            sense = low
            section = "objective"
            continue
        if low == "subject to":
            section = "rows"
            continue
        if low == "bounds":
            section = "bounds"
            continue
        if low == "binaries":
            section = "binaries"
            continue
        if low == "generals":
            section = "generals"
            continue
        if low == "general constraints":
            section = "gencon"
            continue
        if low == "end":
            break
        if section == "objective":
            objective = line.split(":", 1)[1].strip()
        elif section == "rows":
            rows.append(line)
        elif section == "bounds":
            lb, name, ub = _parse_bounds_line(line)
            pending_kinds[name] = ("continuous", lb, ub)
        elif section == "binaries":
            for name in line.split():
                m.add_var(name, "binary", 0, 1)
        elif section == "generals":
            for name in line.split():
                kind = pending_kinds.pop(name, ("integer", 0, math.inf))
                m.add_var(name, "integer", kind[1], kind[2])
        elif section == "gencon":
            name, _, rest = line.partition(":")
            out, _, call = rest.strip().partition(" = ")
            kind, _, argtext = call.partition("(")
            args = tuple(a.strip() for a in
                         argtext.rstrip(" )").split(","))
            kmap = {"ABS": "ABS", "LOG_2": "LOG2", "AND": "AND"}
            m.general.append(GenRow(name.strip(), kmap[kind.strip()],
                                    out.strip(), args))
    for name, (kind, lb, ub) in pending_kinds.items():
        m.add_var(name, kind, lb, ub)
    for line in rows:
        name, _, body = line.partition(":")
        body = body.strip()
        for s in ("<=", ">=", "="):
            idx = body.rfind(s)
            if idx > 0:
                break
        rhs = float(body[idx + len(s):])
        expr = body[:idx].strip()
        if "[" in expr:
            linpart, _, quadpart = expr.partition("[")
            quadpart = quadpart.rstrip("] ").strip()
            lin_terms = _parse_terms(linpart.rstrip("+ ").strip())
            quad_terms = []
            for coeff, pair in _parse_terms(quadpart, allow_prod=True):
                u, v = pair
                quad_terms.append((coeff, u, v))
            m.quadratic.append(QuadRow(name.strip(), tuple(lin_terms),
                                       tuple(quad_terms), s, rhs))
        else:
            m.linear.append(LinRow(name.strip(), tuple(_parse_terms(expr)),
                                   s, rhs))
    if objective:
        m.objective = tuple(_parse_terms(objective))
        m.objective_sense = sense
    return m


def _parse_bounds_line(line):
    parts = line.split("<=")
    lb = -math.inf if parts[0].strip() == "-inf" else float(parts[0])
    name = parts[1].strip()
    ub = math.inf if parts[2].strip() == "+inf" else float(parts[2])
    return lb, name, ub


def _parse_terms(text, allow_prod=False):
    terms = []
    if not text or text == "0":
        return terms
    tokens = text.replace("+", " + ").replace("-", " - ").split()
    i = 0
    sign = 1
    while i < len(tokens):
        tok = tokens[i]
        if tok == "+":
            sign = 1
            i += 1
            continue
        if tok == "-":
            sign = -1
            i += 1
            continue
        coeff = sign * float(tok)
        var = tokens[i + 1]
        if allow_prod and i + 3 < len(tokens) + 1 and i + 2 < len(tokens) \
                and tokens[i + 2] == "*":
            terms.append((coeff, (var, tokens[i + 3])))
            i += 4
        else:
            terms.append((coeff, var))
            i += 2
        sign = 1
    return terms


# ---------------------------------------------------------------- checking

TOL = 1e-6


def check_assignment(model, assignment):
    """Evaluate every constraint; returns a dict with satisfied flag, the
    violated row names and the objective value.

    Continuous equalities use a 1e-6 tolerance; AND is exact, ABS exact,
    LOG2 within tolerance with log2(0) = -inf honoured. An assignment whose
    objective picks up a -inf log value reports objective -inf.
    """
    for name in model.variables:
        if name not in assignment:
            raise KeyError("assignment missing variable %s" % name)
    violated = []

    def val(v):
        return assignment[v]

    def lin_value(terms):
        total = 0.0
        for coeff, v in terms:
            x = val(v)
            if coeff == 0 or x == 0:
                continue
            total += coeff * x
        return total

    def check_row(name, lhs, sense, rhs):
        if math.isnan(lhs):
            violated.append(name)
            return
        if sense == "<=":
            ok = lhs <= rhs + TOL
        elif sense == ">=":
            ok = lhs >= rhs - TOL
        else:
            if math.isinf(lhs) or math.isinf(rhs):
                ok = lhs == rhs
            else:
                ok = abs(lhs - rhs) <= TOL
        if not ok:
            violated.append(name)

    for row in model.linear:
        check_row(row.name, lin_value(row.terms), row.sense, row.rhs)
    for row in model.quadratic:
        total = lin_value(row.lin_terms)
        for coeff, u, v in row.quad_terms:
            x, y = val(u), val(v)
            if coeff == 0 or x == 0 or y == 0:
                continue
            total += coeff * x * y
        check_row(row.name, total, row.sense, row.rhs)
    for row in model.general:
        out = val(row.out)
        if row.kind == "ABS":
            if out != abs(val(row.args[0])):
                violated.append(row.name)
        elif row.kind == "AND":
            x = 1.0
            for a in row.args:
                x *= val(a)
            if out != (1.0 if all(val(a) == 1 for a in row.args) else 0.0):
                violated.append(row.name)
        elif row.kind == "LOG2":
            u = val(row.args[0])
            if u == 0:
                if out != -math.inf:
                    violated.append(row.name)
            elif u < 0 or abs(out - math.log2(u)) > TOL:
                violated.append(row.name)
    objective = 0.0
    for coeff, v in model.objective:
        x = val(v)
        if coeff == 0 or x == 0:
            continue
        objective += coeff * x
    return {"satisfied": not violated, "violated": violated,
            "objective": objective}


# ---------------------------------------------------- induced assignments

def _set_bits(out, names, word):
    for i, name in enumerate(names):
        out[name] = float((word >> i) & 1)


def induced_diff_assignment(out, spec, trail, prefix="d"):
    """Fill the differential-part variables from a concrete trail."""
    from .cipher import rotl
    n = spec.n
    rd = trail.rounds
    total = 0
    for idx, alpha in enumerate(trail.alphas):
        _set_bits(out, ["%s_alpha_%d_%d" % (prefix, idx, i)
                        for i in range(n)], alpha)
    for r in range(rd):
        cur = trail.alphas[r + 1]
        beta = trail.alphas[r + 2] ^ trail.alphas[r]
        va = rotl(cur, spec.a, n) | rotl(cur, spec.b, n)
        db = (rotl(cur, spec.b, n) & ~rotl(cur, spec.a, n)
              & rotl(cur, 2 * spec.a - spec.b, n)) & spec.mask
        gamma = beta ^ rotl(cur, spec.c, n)
        probits = va ^ db
        _set_bits(out, ["%s_beta_%d_%d" % (prefix, r, i) for i in range(n)],
                  beta)
        _set_bits(out, ["%s_gamma_%d_%d" % (prefix, r, i) for i in range(n)],
                  gamma)
        _set_bits(out, ["%s_varibits_%d_%d" % (prefix, r, i)
                        for i in range(n)], va)
        _set_bits(out, ["%s_doublebits_%d_%d" % (prefix, r, i)
                        for i in range(n)], db)
        _set_bits(out, ["%s_probits_%d_%d" % (prefix, r, i)
                        for i in range(n)], probits)
        w = probits.bit_count()
        out["%s_pro_%d" % (prefix, r)] = float(w)
        total += w
    out["%s_Pro" % prefix] = float(total)
    return total


def induced_lin_assignment(out, spec, trail, prefix="l"):
    """Fill the linear-part variables from a concrete trail."""
    from .cipher import rotl
    n = spec.n
    rl = trail.rounds
    d = spec.a - spec.b
    total = 0
    for idx, lam in enumerate(trail.lambdas):
        _set_bits(out, ["%s_lam_%d_%d" % (prefix, idx, i) for i in range(n)],
                  lam)
    for r in range(rl):
        cur = trail.lambdas[r + 1]
        lam_in = (trail.lambdas[r] ^ trail.lambdas[r + 2]
                  ^ rotl(cur, -spec.c % n, n))
        _set_bits(out, ["%s_lamin_%d_%d" % (prefix, r, i) for i in range(n)],
                  lam_in)
        tmp = [cur]
        for j in range(1, n):
            tmp.append(tmp[-1] & rotl(cur, (-j * d) % n, n))
        abits = 0
        for t in tmp:
            abits ^= t
        for j in range(n):
            _set_bits(out, ["%s_tmp_%d_%d_%d" % (prefix, r, j, i)
                            for i in range(n)], tmp[j])
        _set_bits(out, ["%s_abits_%d_%d" % (prefix, r, i) for i in range(n)],
                  abits)
        for i in range(n):
            count = sum((t >> i) & 1 for t in tmp) + ((abits >> i) & 1)
            out["%s_N_%d_%d" % (prefix, r, i)] = float(count // 2)
        sb = [(rotl(cur, -spec.a % n, n) & ~rotl(cur, -spec.b % n, n)
               & ~rotl(abits, -spec.a % n, n)) & spec.mask]
        gate = rotl(cur, spec.a - 2 * spec.b, n)
        for j in range(1, n):
            sb.append(rotl(sb[-1], 2 * d, n) & gate)
        pb = [rotl(sb[0] & lam_in, 2 * d, n)]
        for j in range(1, n):
            pb.append(rotl((sb[j] & lam_in) ^ pb[-1], 2 * d, n))
        for j in range(n):
            _set_bits(out, ["%s_sbits_%d_%d_%d" % (prefix, r, j, i)
                            for i in range(n)], sb[j])
            _set_bits(out, ["%s_pbits_%d_%d_%d" % (prefix, r, j, i)
                            for i in range(n)], pb[j])
        w = abits.bit_count()
        out["%s_cor_%d" % (prefix, r)] = float(w)
        total += w
    out["%s_Cor_l" % prefix] = float(total)
    return total


def induced_middle_assignment(out, spec, rm, delta, lam, prefix="m"):
    """Fill the middle-part variables; returns the Cor_m value (may be
    -inf when the mask selects a zero entry)."""
    from . import middle as middle_engine
    n = spec.n
    state = middle_engine.init_from_difference(delta, spec)
    left, right = state.left, state.right
    for i in range(n):
        out["%s_x_1_%d" % (prefix, i)] = float(left[i])
        out["%s_x_0_%d" % (prefix, i)] = float(right[i])
    for r in range(rm):
        import numpy as np
        la = np.roll(left, spec.a)
        lb = np.roll(left, spec.b)
        lc = np.roll(left, spec.c)
        y = 0.25 * (1.0 + la + lb + la * lb)
        t = y * right
        nxt = t * lc
        for i in range(n):
            out["%s_y_%d_%d" % (prefix, r, i)] = float(y[i])
            out["%s_t_%d_%d" % (prefix, r, i)] = float(t[i])
            out["%s_x_%d_%d" % (prefix, r + 2, i)] = float(nxt[i])
        left, right = nxt, left
    corm = 0.0
    for i in range(n):
        z0 = abs(float(left[i]))
        z1 = abs(float(right[i]))
        z2 = math.log2(z0) if z0 > 0 else -math.inf
        z3 = math.log2(z1) if z1 > 0 else -math.inf
        out["%s_z0_%d" % (prefix, i)] = z0
        out["%s_z1_%d" % (prefix, i)] = z1
        out["%s_z2_%d" % (prefix, i)] = z2
        out["%s_z3_%d" % (prefix, i)] = z3
        if (lam[0] >> i) & 1:
            corm += z2
        if (lam[1] >> i) & 1:
            corm += z3
    out["%s_Cor" % prefix] = corm
    return corm


def induced_full_assignment(spec, config, diff_trail, lin_trail):
    """Complete assignment of the merged model for a concrete DL trail."""
    out = {}
    pro = induced_diff_assignment(out, spec, diff_trail)
    corl = induced_lin_assignment(out, spec, lin_trail)
    corm = induced_middle_assignment(out, spec, config.rm,
                                     diff_trail.delta_out,
                                     lin_trail.mask_in)
    out["e_Cor"] = pro - corm + 2 * corl
    return out
