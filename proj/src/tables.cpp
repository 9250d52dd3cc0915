#include "pmchemo/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "pmchemo/errors.hpp"
#include "pmchemo/exp_moments.hpp"

namespace pmchemo {

namespace {

constexpr int kQuadNPhi = 64;
constexpr int kQuadNR = 64;

std::vector<double> log_magnitudes(double lo, double hi, int m) {
  std::vector<double> mags(m);
  if (m == 1) {
    mags[0] = hi;
    return mags;
  }
  double ratio = std::log(hi / lo) / (m - 1);
  for (int k = 0; k < m; ++k) mags[k] = lo * std::exp(ratio * k);
  mags[m - 1] = hi;
  return mags;
}

// Symmetric grid {-rev(mags), 0, mags}.
std::vector<double> symmetric_log_grid(double lo, double hi, int m) {
  auto mags = log_magnitudes(lo, hi, m);
  std::vector<double> grid;
  grid.reserve(2 * m + 1);
  for (int k = m - 1; k >= 0; --k) grid.push_back(-mags[k]);
  grid.push_back(0.0);
  for (int k = 0; k < m; ++k) grid.push_back(mags[k]);
  return grid;
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

// ---------------------------------------------------------------------------
// Half-line table
// ---------------------------------------------------------------------------

HalfClosureTable build_half_table(int n, double b_max) {
  if (n < 8 || b_max <= 0.0) throw std::invalid_argument("build_half_table: bad n or b_max");
  HalfClosureTable t;
  auto grid = symmetric_log_grid(0.01, b_max, n / 2);
  t.b.reserve(grid.size());
  for (double b : grid) {
    ExpMoments1D m = half_plus_exp_moments(b);
    if (!t.u.empty() && !(m.u > t.u.back())) continue;  // drop saturated duplicates
    t.b.push_back(b);
    t.u.push_back(m.u);
    t.w.push_back(m.w);
    t.du_db.push_back(m.du_db);
    t.dw_db.push_back(m.dw_db);
  }
  t.finalize();
  return t;
}

void HalfClosureTable::finalize() {
  std::vector<double> db_du(u.size()), dw_du(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    db_du[i] = 1.0 / du_db[i];
    dw_du[i] = dw_db[i] / du_db[i];
  }
  b_of_u_ = HermiteCurve(u, b, db_du);
  w_of_u_ = HermiteCurve(u, w, dw_du);
}

HalfClosureTable::Eval HalfClosureTable::lookup(double uq) const {
  Eval e;
  if (uq <= u.front()) {
    // rest limit: the ansatz concentrates at v = 0, w -> 2u^2, b -> -1/u
    double u0 = u.front();
    double off = w.front() - 2.0 * u0 * u0;
    e.w = 2.0 * uq * uq + (u0 > 0.0 ? off * (uq / u0) : 0.0);
    e.b = uq > 1e-300 ? -1.0 / uq : -std::numeric_limits<double>::max();
  } else if (uq >= u.back()) {
    // beam limit: w -> 1 - 2(1-u) + 2(1-u)^2, b -> 1/(1-u)
    double eps = 1.0 - uq, eps0 = 1.0 - u.back();
    double off = w.back() - (1.0 - 2.0 * eps0 + 2.0 * eps0 * eps0);
    e.w = 1.0 - 2.0 * eps + 2.0 * eps * eps + (eps0 > 0.0 ? off * (eps / eps0) : 0.0);
    e.b = eps > 1e-300 ? 1.0 / eps : std::numeric_limits<double>::max();
  } else {
    e.b = b_of_u_(uq);
    e.w = w_of_u_(uq);
  }
  e.w = clamp(e.w, uq * uq, uq);
  return e;
}

// ---------------------------------------------------------------------------
// Full-moment 1D table
// ---------------------------------------------------------------------------

M1Table1D build_m1_line_table(int n, double b_max) {
  if (n < 8 || b_max <= 0.0) throw std::invalid_argument("build_m1_line_table: bad n or b_max");
  M1Table1D t;
  auto mags = log_magnitudes(0.01, b_max, std::max(n / 2, 4));
  std::vector<double> grid;
  grid.push_back(0.0);
  grid.insert(grid.end(), mags.begin(), mags.end());
  for (double b : grid) {
    ExpMoments1D m = full_exp_moments(b);
    if (!t.u.empty() && !(m.u > t.u.back())) continue;
    t.b.push_back(b);
    t.u.push_back(m.u);
    t.w.push_back(m.w);
    t.du_db.push_back(m.du_db);
    t.dw_db.push_back(m.dw_db);
  }
  t.finalize();
  return t;
}

void M1Table1D::finalize() {
  std::vector<double> db_du(u.size()), dw_du(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    db_du[i] = 1.0 / du_db[i];
    dw_du[i] = dw_db[i] / du_db[i];
  }
  b_of_u_ = HermiteCurve(u, b, db_du);
  w_of_u_ = HermiteCurve(u, w, dw_du);
}

M1Table1D::Eval M1Table1D::lookup_abs(double a) const {
  Eval e;
  if (a >= u.back()) {
    double eps = 1.0 - a, eps0 = 1.0 - u.back();
    double off = w.back() - (1.0 - 2.0 * eps0 + 2.0 * eps0 * eps0);
    e.w = 1.0 - 2.0 * eps + 2.0 * eps * eps + (eps0 > 0.0 ? off * (eps / eps0) : 0.0);
    e.b = eps > 1e-300 ? 1.0 / eps : std::numeric_limits<double>::max();
  } else {
    e.b = b_of_u_(a);
    e.w = w_of_u_(a);
  }
  e.w = clamp(e.w, a * a, 1.0);
  return e;
}

// ---------------------------------------------------------------------------
// Full-moment 2D (disk) table
// ---------------------------------------------------------------------------

M1Table2D build_m1_disk_table(int n, double b_max) {
  if (n < 8 || b_max <= 0.0) throw std::invalid_argument("build_m1_disk_table: bad n or b_max");
  QuadratureRule2D rule = quadrature(Domain2D::FullDisk, 4 * kQuadNPhi, kQuadNR);
  M1Table2D t;
  auto mags = log_magnitudes(0.01, b_max, std::max(n - 1, 4));
  std::vector<double> grid;
  grid.push_back(0.0);
  grid.insert(grid.end(), mags.begin(), mags.end());
  for (double beta : grid) {
    double mx = 0.0;
    for (const Vec2& v : rule.nodes) mx = std::max(mx, beta * v.x);
    double z = 0, m1 = 0, mxx = 0, myy = 0, mxxx = 0, mxyy = 0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const Vec2& v = rule.nodes[k];
      double e = rule.weights[k] * std::exp(beta * v.x - mx);
      z += e;
      m1 += e * v.x;
      mxx += e * v.x * v.x;
      myy += e * v.y * v.y;
      mxxx += e * v.x * v.x * v.x;
      mxyy += e * v.x * v.y * v.y;
    }
    double u = m1 / z, wpar = mxx / z, wperp = myy / z;
    if (!t.u.empty() && !(u > t.u.back())) continue;
    t.beta.push_back(beta);
    t.u.push_back(u);
    t.w_par.push_back(wpar);
    t.w_perp.push_back(wperp);
    t.du.push_back(wpar - u * u);
    t.dw_par.push_back(mxxx / z - wpar * u);
    t.dw_perp.push_back(mxyy / z - wperp * u);
  }
  t.finalize();
  return t;
}

void M1Table2D::finalize() {
  std::vector<double> db(u.size()), dpar(u.size()), dperp(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    db[i] = 1.0 / du[i];
    dpar[i] = dw_par[i] / du[i];
    dperp[i] = dw_perp[i] / du[i];
  }
  beta_of_u_ = HermiteCurve(u, beta, db);
  wpar_of_u_ = HermiteCurve(u, w_par, dpar);
  wperp_of_u_ = HermiteCurve(u, w_perp, dperp);
}

M1Table2D::Eval M1Table2D::lookup_abs(double a) const {
  Eval e;
  if (a >= u.back()) {
    // Laplace asymptotics at the beam: w_par -> 1 - 2(1-u), w_perp -> (1-u)
    double eps = 1.0 - a, eps0 = 1.0 - u.back();
    double off_par = w_par.back() - (1.0 - 2.0 * eps0);
    double off_perp = w_perp.back() - eps0;
    double fade = eps0 > 0.0 ? eps / eps0 : 0.0;
    e.w_par = 1.0 - 2.0 * eps + off_par * fade;
    e.w_perp = eps + off_perp * fade;
    e.beta = eps > 1e-300 ? 1.0 / eps : std::numeric_limits<double>::max();
  } else {
    e.beta = beta_of_u_(a);
    e.w_par = wpar_of_u_(a);
    e.w_perp = wperp_of_u_(a);
  }
  e.w_par = clamp(e.w_par, a * a, 1.0);
  e.w_perp = clamp(e.w_perp, 0.0, 1.0);
  return e;
}

// ---------------------------------------------------------------------------
// Quarter-moment table
// ---------------------------------------------------------------------------

QuarterClosureTable build_quarter_table(int n_per_axis, double b_max) {
  if (n_per_axis < 8 || b_max <= 0.0) {
    throw std::invalid_argument("build_quarter_table: bad n_per_axis or b_max");
  }
  QuadratureRule2D rule = quadrature(Domain2D::PP, kQuadNPhi, kQuadNR);
  QuarterClosureTable t;
  t.bx = symmetric_log_grid(0.04, b_max, n_per_axis);
  t.by = t.bx;
  std::size_t K = t.bx.size();
  t.ux.resize(K * K);
  t.uy.resize(K * K);
  t.wxx.resize(K * K);
  t.wxy.resize(K * K);
  t.wyy.resize(K * K);
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      Vec2 b{t.bx[i], t.by[j]};
      double mx = -std::numeric_limits<double>::infinity();
      for (const Vec2& v : rule.nodes) mx = std::max(mx, b.dot(v));
      double z = 0, qx = 0, qy = 0, rxx = 0, rxy = 0, ryy = 0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const Vec2& v = rule.nodes[k];
        double e = rule.weights[k] * std::exp(b.dot(v) - mx);
        z += e;
        qx += e * v.x;
        qy += e * v.y;
        rxx += e * v.x * v.x;
        rxy += e * v.x * v.y;
        ryy += e * v.y * v.y;
      }
      std::size_t id = i * K + j;
      t.ux[id] = qx / z;
      t.uy[id] = qy / z;
      t.wxx[id] = rxx / z;
      t.wxy[id] = rxy / z;
      t.wyy[id] = ryy / z;
    }
  }
  t.finalize();
  return t;
}

void QuarterClosureTable::finalize() {
  const std::size_t k = K();
  if (k < 2 || by.size() != k || ux.size() != k * k) {
    throw std::invalid_argument("QuarterClosureTable: inconsistent arrays");
  }
  seed_n_ = 256;
  seed_.assign(static_cast<std::size_t>(seed_n_) * seed_n_, -1);
  std::vector<double> seed_d(seed_.size(), 0.0);
  auto bucket = [&](double v) {
    return std::min(seed_n_ - 1, std::max(0, static_cast<int>(v * seed_n_)));
  };
  // seed each bucket with the cell whose centre image is nearest
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = 0; j + 1 < k; ++j) {
      double cx = 0.25 * (ux[idx(i, j)] + ux[idx(i + 1, j)] + ux[idx(i, j + 1)] +
                          ux[idx(i + 1, j + 1)]);
      double cy = 0.25 * (uy[idx(i, j)] + uy[idx(i + 1, j)] + uy[idx(i, j + 1)] +
                          uy[idx(i + 1, j + 1)]);
      int a = bucket(cx), c = bucket(cy);
      double bx_c = (a + 0.5) / seed_n_, by_c = (c + 0.5) / seed_n_;
      double d = (cx - bx_c) * (cx - bx_c) + (cy - by_c) * (cy - by_c);
      std::size_t sid = static_cast<std::size_t>(a) * seed_n_ + c;
      if (seed_[sid] < 0 || d < seed_d[sid]) {
        seed_[sid] = static_cast<int>(i * (k - 1) + j);
        seed_d[sid] = d;
      }
    }
  }
  // Flood-fill empty buckets from their nearest assigned neighbour.
  std::deque<std::pair<int, int>> queue;
  for (int a = 0; a < seed_n_; ++a) {
    for (int c = 0; c < seed_n_; ++c) {
      if (seed_[static_cast<std::size_t>(a) * seed_n_ + c] >= 0) queue.emplace_back(a, c);
    }
  }
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  while (!queue.empty()) {
    auto [a, c] = queue.front();
    queue.pop_front();
    int v = seed_[static_cast<std::size_t>(a) * seed_n_ + c];
    for (int d = 0; d < 4; ++d) {
      int na = a + dx[d], nc = c + dy[d];
      if (na < 0 || nc < 0 || na >= seed_n_ || nc >= seed_n_) continue;
      int& s = seed_[static_cast<std::size_t>(na) * seed_n_ + nc];
      if (s < 0) {
        s = v;
        queue.emplace_back(na, nc);
      }
    }
  }
}

bool QuarterClosureTable::invert_cell(std::size_t i, std::size_t j, const Vec2& target,
                                      double& s, double& t) const {
  const Vec2 c00{ux[idx(i, j)], uy[idx(i, j)]};
  const Vec2 c10{ux[idx(i + 1, j)], uy[idx(i + 1, j)]};
  const Vec2 c01{ux[idx(i, j + 1)], uy[idx(i, j + 1)]};
  const Vec2 c11{ux[idx(i + 1, j + 1)], uy[idx(i + 1, j + 1)]};
  s = 0.5;
  t = 0.5;
  for (int it = 0; it < 40; ++it) {
    Vec2 f = c00 * ((1 - s) * (1 - t)) + c10 * (s * (1 - t)) + c01 * ((1 - s) * t) +
             c11 * (s * t) - target;
    if (std::abs(f.x) + std::abs(f.y) < 1e-14) return true;
    Vec2 fs = (c10 - c00) * (1 - t) + (c11 - c01) * t;
    Vec2 ft = (c01 - c00) * (1 - s) + (c11 - c10) * s;
    double det = fs.x * ft.y - fs.y * ft.x;
    if (std::abs(det) < 1e-300) return false;
    double ds = (-f.x * ft.y + f.y * ft.x) / det;
    double dt = (-fs.x * f.y + fs.y * f.x) / det;
    ds = clamp(ds, -2.0, 2.0);
    dt = clamp(dt, -2.0, 2.0);
    s = clamp(s + ds, -3.0, 4.0);
    t = clamp(t + dt, -3.0, 4.0);
    if (std::abs(ds) + std::abs(dt) < 1e-15) return true;
  }
  return true;  // non-quadratic convergence still leaves a usable (s,t) direction
}

QuarterClosureTable::Eval QuarterClosureTable::eval_cell(std::size_t i, std::size_t j,
                                                         double s, double t,
                                                         bool inside) const {
  auto bil = [&](const std::vector<double>& a) {
    return a[idx(i, j)] * (1 - s) * (1 - t) + a[idx(i + 1, j)] * s * (1 - t) +
           a[idx(i, j + 1)] * (1 - s) * t + a[idx(i + 1, j + 1)] * s * t;
  };
  Eval e;
  e.b = {bx[i] + s * (bx[i + 1] - bx[i]), by[j] + t * (by[j + 1] - by[j])};
  e.w = {bil(wxx), bil(wxy), bil(wyy)};
  e.u_reached = {bil(ux), bil(uy)};
  e.inside = inside;
  return e;
}

QuarterClosureTable::Eval QuarterClosureTable::lookup(const Vec2& u_target) const {
  const std::size_t k = K();
  const std::size_t nc = k - 1;
  const double tol = 1e-9;
  auto in_unit = [&](double s, double t) {
    return s >= -tol && s <= 1.0 + tol && t >= -tol && t <= 1.0 + tol;
  };

  // seeded walk with multi-cell jumps
  int bx_i = std::min(seed_n_ - 1, std::max(0, static_cast<int>(u_target.x * seed_n_)));
  int by_i = std::min(seed_n_ - 1, std::max(0, static_cast<int>(u_target.y * seed_n_)));
  int cell = seed_[static_cast<std::size_t>(bx_i) * seed_n_ + by_i];
  long i = cell >= 0 ? cell / static_cast<long>(nc) : static_cast<long>(nc) / 2;
  long j = cell >= 0 ? cell % static_cast<long>(nc) : static_cast<long>(nc) / 2;
  double s = 0.5, t = 0.5;
  for (std::size_t step = 0; step < 4 * k; ++step) {
    invert_cell(i, j, u_target, s, t);
    if (in_unit(s, t)) return eval_cell(i, j, clamp(s, 0.0, 1.0), clamp(t, 0.0, 1.0), true);
    long di = s > 1.0 + tol ? static_cast<long>(std::min(std::floor(s), 8.0))
                            : (s < -tol ? static_cast<long>(std::max(std::floor(s), -8.0)) : 0);
    long dj = t > 1.0 + tol ? static_cast<long>(std::min(std::floor(t), 8.0))
                            : (t < -tol ? static_cast<long>(std::max(std::floor(t), -8.0)) : 0);
    long ni = std::min(std::max(i + di, 0L), static_cast<long>(nc) - 1);
    long nj = std::min(std::max(j + dj, 0L), static_cast<long>(nc) - 1);
    if (ni == i && nj == j) break;
    i = ni;
    j = nj;
  }

  // fallback: cells around the nearest forward sample
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (std::size_t id = 0; id < k * k; ++id) {
    double dxu = ux[id] - u_target.x, dyu = uy[id] - u_target.y;
    double d = dxu * dxu + dyu * dyu;
    if (d < best_d) {
      best_d = d;
      best = id;
    }
  }
  long ci = static_cast<long>(best / k), cj = static_cast<long>(best % k);
  for (long ring = 0; ring <= 2; ++ring) {
    for (long a = ci - 1 - ring; a <= ci + ring; ++a) {
      for (long b = cj - 1 - ring; b <= cj + ring; ++b) {
        if (a < 0 || b < 0 || a >= static_cast<long>(nc) || b >= static_cast<long>(nc)) continue;
        invert_cell(a, b, u_target, s, t);
        if (in_unit(s, t)) return eval_cell(a, b, clamp(s, 0.0, 1.0), clamp(t, 0.0, 1.0), true);
      }
    }
  }

  // genuinely outside the sampled region: clamp into the border cell nearest
  // to the target
  long a = std::min(std::max(ci, 0L), static_cast<long>(nc) - 1);
  long b = std::min(std::max(cj, 0L), static_cast<long>(nc) - 1);
  invert_cell(a, b, u_target, s, t);
  return eval_cell(a, b, clamp(s, 0.0, 1.0), clamp(t, 0.0, 1.0), false);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'P', 'M', 'C', 'T', 'B', 'L', '0', '1'};

void write_array(std::ostream& os, const std::vector<double>& a) {
  std::uint64_t n = a.size();
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  os.write(reinterpret_cast<const char*>(a.data()), static_cast<std::streamsize>(n * sizeof(double)));
}

std::vector<double> read_array(std::istream& is) {
  std::uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!is || n > (1ull << 32)) throw ValidationError("table file: bad array length");
  std::vector<double> a(n);
  is.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw ValidationError("table file: truncated payload");
  return a;
}

}  // namespace

TableKind table_kind(const ClosureTable& table) {
  return static_cast<TableKind>(table.index());
}

void save_table(const std::string& path, const ClosureTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open table file for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  std::uint32_t kind = static_cast<std::uint32_t>(table.index());
  os.write(reinterpret_cast<const char*>(&kind), sizeof(kind));
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, HalfClosureTable> || std::is_same_v<T, M1Table1D>) {
          write_array(os, t.b);
          write_array(os, t.u);
          write_array(os, t.w);
          write_array(os, t.du_db);
          write_array(os, t.dw_db);
        } else if constexpr (std::is_same_v<T, M1Table2D>) {
          write_array(os, t.beta);
          write_array(os, t.u);
          write_array(os, t.w_par);
          write_array(os, t.w_perp);
          write_array(os, t.du);
          write_array(os, t.dw_par);
          write_array(os, t.dw_perp);
        } else {
          write_array(os, t.bx);
          write_array(os, t.by);
          write_array(os, t.ux);
          write_array(os, t.uy);
          write_array(os, t.wxx);
          write_array(os, t.wxy);
          write_array(os, t.wyy);
        }
      },
      table);
  if (!os) throw ValidationError("failed writing table file: " + path);
}

ClosureTable load_table(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open table file: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ValidationError("not a closure table file: " + path);
  }
  std::uint32_t kind = 0;
  is.read(reinterpret_cast<char*>(&kind), sizeof(kind));
  switch (static_cast<TableKind>(kind)) {
    case TableKind::Half: {
      HalfClosureTable t;
      t.b = read_array(is);
      t.u = read_array(is);
      t.w = read_array(is);
      t.du_db = read_array(is);
      t.dw_db = read_array(is);
      t.finalize();
      return t;
    }
    case TableKind::Quarter: {
      QuarterClosureTable t;
      t.bx = read_array(is);
      t.by = read_array(is);
      t.ux = read_array(is);
      t.uy = read_array(is);
      t.wxx = read_array(is);
      t.wxy = read_array(is);
      t.wyy = read_array(is);
      t.finalize();
      return t;
    }
    case TableKind::M1Line: {
      M1Table1D t;
      t.b = read_array(is);
      t.u = read_array(is);
      t.w = read_array(is);
      t.du_db = read_array(is);
      t.dw_db = read_array(is);
      t.finalize();
      return t;
    }
    case TableKind::M1Disk: {
      M1Table2D t;
      t.beta = read_array(is);
      t.u = read_array(is);
      t.w_par = read_array(is);
      t.w_perp = read_array(is);
      t.du = read_array(is);
      t.dw_par = read_array(is);
      t.dw_perp = read_array(is);
      t.finalize();
      return t;
    }
  }
  throw ValidationError("table file has unknown kind: " + path);
}

}  // namespace pmchemo
