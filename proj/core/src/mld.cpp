#include "hybzono/mld.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace hybzono
{

namespace
{
    constexpr double kEps = 1e-6;

    void check_shape(std::vector<std::string>& errors, const char* name, const Matrix& M, Index rows, Index cols)
    {
        if (M.rows() != rows || M.cols() != cols)
        {
            std::ostringstream os;
            os << name << " is " << M.rows() << "x" << M.cols() << ", expected " << rows << "x" << cols;
            errors.push_back(os.str());
        }
        else if (!M.allFinite())
        {
            errors.push_back(std::string(name) + " has non-finite entries");
        }
    }

    void check_length(std::vector<std::string>& errors, const char* name, const Vector& v, Index len)
    {
        if (v.size() != len)
        {
            std::ostringstream os;
            os << name << " has length " << v.size() << ", expected " << len;
            errors.push_back(os.str());
        }
        else if (!v.allFinite())
        {
            errors.push_back(std::string(name) + " has non-finite entries");
        }
    }

    // Appends rows (E, rhs) to the accumulated inequality block.
    void append_rows(Matrix& E, Vector& rhs, const Matrix& rows, const Vector& r)
    {
        E = vcat(E, rows);
        rhs = vcat(rhs, r);
    }

    Matrix zero_rows(Index cols) { return Matrix(0, cols); }

    // Splits inequality rows over v = (x, u, w) into the MLD blocks.
    void split_rows(MldSystem& m, const Matrix& E, const Vector& rhs)
    {
        const Index n = m.dims.n();
        const Index nu = m.dims.nu();
        const Index nr = m.dims.nr();
        m.Ex = E.leftCols(n);
        m.Eu = E.middleCols(n, nu);
        m.Ew = E.rightCols(nr);
        m.Eaff = rhs;
        m.dims.n_e = E.rows();
    }
} // namespace

std::vector<std::string> validate(const MldSystem& m)
{
    std::vector<std::string> errors;
    const MldDims& d = m.dims;
    const Index fields[] = {d.n_xc, d.n_xl, d.n_uc, d.n_ul, d.n_rc, d.n_rl, d.n_e};
    const char* names[] = {"n_xc", "n_xl", "n_uc", "n_ul", "n_rc", "n_rl", "n_e"};
    bool negative = false;
    for (int i = 0; i < 7; ++i)
    {
        if (fields[i] < 0)
        {
            errors.push_back(std::string(names[i]) + " is negative");
            negative = true;
        }
    }
    if (negative)
        return errors;

    const Index n = d.n();
    const Index nu = d.nu();
    const Index nr = d.nr();
    check_shape(errors, "A", m.A, n, n);
    check_shape(errors, "Bu", m.Bu, n, nu);
    check_shape(errors, "Bw", m.Bw, n, nr);
    check_length(errors, "Baff", m.Baff, n);
    check_shape(errors, "Ex", m.Ex, d.n_e, n);
    check_shape(errors, "Eu", m.Eu, d.n_e, nu);
    check_shape(errors, "Ew", m.Ew, d.n_e, nr);
    check_length(errors, "Eaff", m.Eaff, d.n_e);
    if (m.Ex.rows() != m.Eaff.size())
        errors.push_back("Eaff length differs from the row count of Ex");
    return errors;
}

void require_valid(const MldSystem& m)
{
    const auto errors = validate(m);
    if (errors.empty())
        return;
    std::string msg = "invalid MLD system:";
    for (const auto& e : errors)
        msg += "\n  " + e;
    throw std::invalid_argument(msg);
}

Discretization zoh_discretize(const Matrix& Ac, const Matrix& Bc, const Vector& f, double Ts)
{
    const Index n = Ac.rows();
    if (Ac.cols() != n)
        throw std::invalid_argument("zoh_discretize: Ac must be square");
    if (Bc.rows() != n && Bc.size() != 0)
        throw std::invalid_argument("zoh_discretize: Bc row count differs from Ac");
    if (f.size() != n)
        throw std::invalid_argument("zoh_discretize: f length differs from Ac");
    if (!(Ts > 0.0))
        throw std::invalid_argument("zoh_discretize: Ts must be positive");

    const Index m = Bc.cols();
    Matrix M = Matrix::Zero(n + m + 1, n + m + 1);
    M.topLeftCorner(n, n) = Ac;
    if (m > 0)
        M.block(0, n, n, m) = Bc;
    M.block(0, n + m, n, 1) = f;
    const Matrix E = (M * Ts).exp();

    Discretization d;
    d.Ad = E.topLeftCorner(n, n);
    d.Bd = E.block(0, n, n, m);
    d.fd = E.block(0, n + m, n, 1);
    return d;
}

std::pair<double, double> linear_range(const Vector& row, const Vector& lo, const Vector& hi)
{
    if (row.size() != lo.size() || lo.size() != hi.size())
        throw std::invalid_argument("linear_range: dimension mismatch");
    if (!lo.allFinite() || !hi.allFinite())
        throw std::invalid_argument("linear_range: unbounded domain");
    double mn = 0.0;
    double mx = 0.0;
    for (Index i = 0; i < row.size(); ++i)
    {
        const double a = row[i] * lo[i];
        const double b = row[i] * hi[i];
        mn += std::min(a, b);
        mx += std::max(a, b);
    }
    return {mn, mx};
}

IndicatorRows encode_indicator(const Vector& row, double threshold, Sense sense, Index delta_index,
                               const Vector& lo, const Vector& hi, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("encode_indicator: eps must be positive");
    if (delta_index < 0 || delta_index >= row.size())
        throw std::invalid_argument("encode_indicator: indicator index out of range");
    if (row[delta_index] != 0.0)
        throw std::invalid_argument("encode_indicator: row must not involve the indicator");

    const Vector g = sense == Sense::LE ? row : Vector(-row);
    const double t = sense == Sense::LE ? threshold : -threshold;
    const auto [lo_g, hi_g] = linear_range(g, lo, hi);
    const double M = hi_g - t;
    const double m = lo_g - t;

    IndicatorRows out;
    out.E = Matrix::Zero(2, row.size());
    out.rhs.resize(2);
    // delta = 1 -> g^T v <= t
    out.E.row(0) = g.transpose();
    out.E(0, delta_index) = M;
    out.rhs[0] = t + M;
    // delta = 0 -> g^T v >= t + eps
    out.E.row(1) = -g.transpose();
    out.E(1, delta_index) = m - eps;
    out.rhs[1] = -t - eps;
    return out;
}

HybridZonotope mixed_box(const Vector& lo, const Vector& hi, Index n_binary)
{
    const Zonotope box = make_box(lo, hi);
    const Index nc = lo.size();
    const Index n = nc + n_binary;
    Matrix Gc = Matrix::Zero(n, nc);
    Gc.topRows(nc) = box.G;
    Matrix Gb = Matrix::Zero(n, n_binary);
    Gb.bottomRows(n_binary) = 0.5 * Matrix::Identity(n_binary, n_binary);
    Vector c(n);
    c << box.c, Vector::Constant(n_binary, 0.5);
    return HybridZonotope(Gc, Gb, c, Matrix(0, nc), Matrix(0, n_binary), Vector(0));
}

HybridZonotope build_domain_W(const MldDims& dims, const Vector& w_lo, const Vector& w_hi)
{
    if (w_lo.size() != dims.n_rc || w_hi.size() != dims.n_rc)
        throw std::invalid_argument("build_domain_W: missing bounds for continuous auxiliaries");
    return mixed_box(w_lo, w_hi, dims.n_rl);
}

Vector pwa_step(const Vector& x)
{
    Matrix A(2, 2);
    Vector a(2);
    if (x[0] <= 0.0)
    {
        A << 0.75, 0.25, -0.25, 0.75;
        a << -0.25, -0.25;
    }
    else
    {
        A << 0.75, -0.25, 0.25, 0.75;
        a << 0.25, -0.25;
    }
    return A * x + a;
}

MldModel build_pwa_two_mode()
{
    Matrix A1(2, 2), A2(2, 2);
    A1 << 0.75, 0.25, -0.25, 0.75;
    A2 << 0.75, -0.25, 0.25, 0.75;
    Vector a1(2), a2(2);
    a1 << -0.25, -0.25;
    a2 << 0.25, -0.25;
    const Matrix dA = A1 - A2;
    const Vector da = a1 - a2;

    const Vector x_lo = Vector::Constant(2, -5.0);
    const Vector x_hi = Vector::Constant(2, 5.0);

    MldModel model;
    model.name = "pwa2eq";
    MldSystem& m = model.sys;
    m.dims.n_xc = 2;
    m.dims.n_rc = 2;
    m.dims.n_rl = 1;

    // v = (x1, x2, w1, w2, delta)
    const Index nv = 5;
    const Index idx_delta = 4;

    // w = delta * (dA x + da): ranges of each component over the state box
    Vector w_lo(2), w_hi(2);
    for (Index i = 0; i < 2; ++i)
    {
        const auto [lo, hi] = linear_range(dA.row(i).transpose(), x_lo, x_hi);
        w_lo[i] = std::min(0.0, lo + da[i]);
        w_hi[i] = std::max(0.0, hi + da[i]);
    }

    Vector v_lo(nv), v_hi(nv);
    v_lo << x_lo, w_lo, 0.0;
    v_hi << x_hi, w_hi, 1.0;

    Matrix E = zero_rows(nv);
    Vector rhs(0);

    Vector guard = Vector::Zero(nv);
    guard[0] = 1.0;
    const IndicatorRows ind = encode_indicator(guard, 0.0, Sense::LE, idx_delta, v_lo, v_hi, kEps);
    append_rows(E, rhs, ind.E, ind.rhs);

    for (Index i = 0; i < 2; ++i)
    {
        const auto [flo, fhi] = linear_range(dA.row(i).transpose(), x_lo, x_hi);
        const double mf = flo + da[i];
        const double Mf = fhi + da[i];
        Matrix rows = Matrix::Zero(4, nv);
        Vector r(4);
        // w <= Mf delta
        rows(0, 2 + i) = 1.0;
        rows(0, idx_delta) = -Mf;
        r[0] = 0.0;
        // w >= mf delta
        rows(1, 2 + i) = -1.0;
        rows(1, idx_delta) = mf;
        r[1] = 0.0;
        // w <= f - mf (1 - delta)
        rows(2, 2 + i) = 1.0;
        rows.block(2, 0, 1, 2) = -dA.row(i);
        rows(2, idx_delta) = -mf;
        r[2] = da[i] - mf;
        // w >= f - Mf (1 - delta)
        rows(3, 2 + i) = -1.0;
        rows.block(3, 0, 1, 2) = dA.row(i);
        rows(3, idx_delta) = Mf;
        r[3] = -da[i] + Mf;
        append_rows(E, rhs, rows, r);
    }

    m.A = A2;
    m.Bu = Matrix(2, 0);
    m.Bw = Matrix::Zero(2, 3);
    m.Bw.leftCols(2) = Matrix::Identity(2, 2);
    m.Baff = a2;
    split_rows(m, E, rhs);
    require_valid(m);

    model.domains.X = lift(make_box(x_lo, x_hi));
    model.domains.U = HybridZonotope(Matrix(0, 0), Matrix(0, 0), Vector(0), Matrix(0, 0), Matrix(0, 0), Vector(0));
    model.domains.W = build_domain_W(m.dims, w_lo, w_hi);
    model.x_lo = x_lo;
    model.x_hi = x_hi;

    Matrix G0(2, 2);
    G0 << 0.25, -0.19, 0.19, 0.25;
    Vector c0(2);
    c0 << -1.31, 2.55;
    model.R0 = lift(Zonotope(G0, c0));
    return model;
}

namespace
{
    constexpr double kHeatPower = 15.0;
    constexpr double kWallLoss = 0.08;
    constexpr double kTs = 0.01;
    constexpr double kTempLo = 15.0;
    constexpr double kTempHi = 30.0;
    constexpr double kOnBelow = 22.0;
    constexpr double kOffAbove = 24.0;

    struct RoomsLayout
    {
        Matrix Ac;
        Matrix Bc; // heater columns, then outside temperature
        std::vector<Index> heated;
    };

    RoomsLayout rooms_layout(int p)
    {
        if (p < 1 || p > 4)
            throw std::invalid_argument("build_heated_rooms: block count must be in 1..4");
        const Index nr = 3 * p;
        RoomsLayout L;
        L.Ac = Matrix::Zero(nr, nr);
        L.Bc = Matrix::Zero(nr, p + 1);
        for (Index i = 0; i < nr; ++i)
        {
            const bool end = i == 0 || i == nr - 1;
            const double q = end ? 3.0 : 2.0;
            const double b = kWallLoss * q;
            L.Ac(i, i) -= b;
            L.Bc(i, p) = b;
            for (Index j : {i - 1, i + 1})
            {
                if (j < 0 || j >= nr)
                    continue;
                L.Ac(i, j) += 1.0;
                L.Ac(i, i) -= 1.0;
            }
        }
        for (int h = 0; h < p; ++h)
        {
            const Index room = 3 * h + 2;
            L.heated.push_back(room);
            L.Bc(room, h) = kHeatPower;
        }
        return L;
    }
} // namespace

RoomsSimulator rooms_simulator(int p)
{
    const RoomsLayout L = rooms_layout(p);
    const Discretization d = zoh_discretize(L.Ac, L.Bc, Vector::Zero(L.Ac.rows()), kTs);
    RoomsSimulator s;
    s.Ad = d.Ad;
    s.Bh = d.Bd.leftCols(p);
    s.Bu = d.Bd.col(p);
    s.heated = L.heated;
    return s;
}

std::pair<Vector, Vector> RoomsSimulator::step(const Vector& temps, const Vector& heaters, double u) const
{
    Vector h = heaters;
    for (std::size_t i = 0; i < heated.size(); ++i)
    {
        const double t = temps[heated[i]];
        if (t <= kOnBelow)
            h[static_cast<Index>(i)] = 1.0;
        else if (t >= kOffAbove)
            h[static_cast<Index>(i)] = 0.0;
    }
    return {Ad * temps + Bh * h + Bu * u, h};
}

MldModel build_heated_rooms(int p)
{
    const RoomsSimulator sim = rooms_simulator(p);
    const Index nxc = 3 * p;
    const Index nxl = p;

    MldModel model;
    model.name = "rooms:" + std::to_string(p);
    MldSystem& m = model.sys;
    m.dims.n_xc = nxc;
    m.dims.n_xl = nxl;
    m.dims.n_uc = 1;
    m.dims.n_rl = 3 * p;
    const Index n = m.dims.n();

    m.A = Matrix::Zero(n, n);
    m.A.topLeftCorner(nxc, nxc) = sim.Ad;
    m.Bu = Matrix::Zero(n, 1);
    m.Bu.topRows(nxc) = sim.Bu;
    // the switched heater state d3 drives the temperatures and is stored as the next h
    m.Bw = Matrix::Zero(n, 3 * p);
    for (Index i = 0; i < p; ++i)
    {
        m.Bw.block(0, 3 * i + 2, nxc, 1) = sim.Bh.col(i);
        m.Bw(nxc + i, 3 * i + 2) = 1.0;
    }
    m.Baff = Vector::Zero(n);

    // v = (temperatures, heater states, u, (d1, d2, d3) per heater)
    const Index nv = n + 1 + 3 * p;
    Vector v_lo(nv), v_hi(nv);
    v_lo << Vector::Constant(nxc, kTempLo), Vector::Zero(nxl), 0.0, Vector::Zero(3 * p);
    v_hi << Vector::Constant(nxc, kTempHi), Vector::Ones(nxl), 0.1, Vector::Ones(3 * p);

    Matrix E = zero_rows(nv);
    Vector rhs(0);
    for (Index i = 0; i < p; ++i)
    {
        const Index room = sim.heated[static_cast<std::size_t>(i)];
        const Index h = nxc + i;
        const Index d1 = n + 1 + 3 * i;
        const Index d2 = d1 + 1;
        const Index d3 = d1 + 2;

        Vector temp = Vector::Zero(nv);
        temp[room] = 1.0;
        const IndicatorRows low = encode_indicator(temp, kOnBelow, Sense::LE, d1, v_lo, v_hi, kEps);
        append_rows(E, rhs, low.E, low.rhs);
        const IndicatorRows high = encode_indicator(temp, kOffAbove, Sense::GE, d2, v_lo, v_hi, kEps);
        append_rows(E, rhs, high.E, high.rhs);

        Matrix rows = Matrix::Zero(5, nv);
        Vector r = Vector::Zero(5);
        // d3 >= d1
        rows(0, d1) = 1.0;
        rows(0, d3) = -1.0;
        // d3 >= h - d2
        rows(1, h) = 1.0;
        rows(1, d2) = -1.0;
        rows(1, d3) = -1.0;
        // d3 <= d1 + h
        rows(2, d3) = 1.0;
        rows(2, d1) = -1.0;
        rows(2, h) = -1.0;
        // d3 <= d1 + 1 - d2
        rows(3, d3) = 1.0;
        rows(3, d1) = -1.0;
        rows(3, d2) = 1.0;
        r[3] = 1.0;
        // d1 + d2 <= 1
        rows(4, d1) = 1.0;
        rows(4, d2) = 1.0;
        r[4] = 1.0;
        append_rows(E, rhs, rows, r);
    }
    split_rows(m, E, rhs);
    require_valid(m);

    model.x_lo = vcat(Vector(Vector::Constant(nxc, kTempLo)), Vector(Vector::Zero(nxl)));
    model.x_hi = vcat(Vector(Vector::Constant(nxc, kTempHi)), Vector(Vector::Ones(nxl)));
    model.domains.X = mixed_box(Vector::Constant(nxc, kTempLo), Vector::Constant(nxc, kTempHi), nxl);
    model.domains.U = lift(make_box(Vector::Zero(1), Vector::Constant(1, 0.1)));
    model.domains.W = build_domain_W(m.dims, Vector(0), Vector(0));

    const double s6[] = {23.0, 23.5, 23.5, 22.5, 23.0, 22.5};
    Vector s(nxc);
    for (Index i = 0; i < nxc; ++i)
        s[i] = s6[i % 6];
    const Zonotope box = make_box(s.array() - 0.1, s.array() + 0.1);
    model.R0 = cartesian_product(lift(box), singleton(Vector::Ones(nxl)));
    return model;
}

MldModel builtin_model(const std::string& name)
{
    if (name == "pwa2eq")
        return build_pwa_two_mode();
    if (name.rfind("rooms:", 0) == 0)
    {
        const std::string tail = name.substr(6);
        if (tail.size() == 1 && tail[0] >= '1' && tail[0] <= '4')
            return build_heated_rooms(tail[0] - '0');
        throw std::invalid_argument("unknown rooms case '" + name + "' (expected rooms:1..rooms:4)");
    }
    throw std::invalid_argument("unknown built-in model '" + name + "'");
}

} // namespace hybzono
