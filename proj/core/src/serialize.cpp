#include "hybzono/serialize.hpp"

#include <fstream>
#include <sstream>

namespace hybzono
{

Json matrix_to_json(const Matrix& M)
{
    Json rows = Json::array();
    if (M.cols() == 0)
        return rows;
    for (Index i = 0; i < M.rows(); ++i)
    {
        Json row = Json::array();
        for (Index j = 0; j < M.cols(); ++j)
            row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, Index rows, Index cols)
{
    if (!j.is_array())
        throw std::invalid_argument("matrix must be an array of rows");
    if (j.empty())
    {
        if (rows != 0 && cols != 0)
            throw std::invalid_argument("empty matrix where a nonempty block is required");
        return Matrix::Zero(rows, cols);
    }
    if (static_cast<Index>(j.size()) != rows)
        throw std::invalid_argument("matrix row count mismatch");
    Matrix M(rows, cols);
    for (Index i = 0; i < rows; ++i)
    {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw std::invalid_argument("matrix column count mismatch");
        for (Index k = 0; k < cols; ++k)
            M(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
    return M;
}

Json vector_to_json(const Vector& v)
{
    Json a = Json::array();
    for (Index i = 0; i < v.size(); ++i)
        a.push_back(v[i]);
    return a;
}

Vector vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("vector must be an array");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Index>(i)] = j[i].get<double>();
    return v;
}

Json set_to_json(const HybridZonotope& z)
{
    Json j;
    j["n"] = z.n();
    j["Gc"] = matrix_to_json(z.Gc());
    j["Gb"] = matrix_to_json(z.Gb());
    j["c"] = vector_to_json(z.c());
    j["Ac"] = matrix_to_json(z.Ac());
    j["Ab"] = matrix_to_json(z.Ab());
    j["b"] = vector_to_json(z.b());
    Json tags = Json::array();
    for (const SlackTag& t : z.slack_tags())
        tags.push_back(Json{{"column", t.column}, {"row", t.row}});
    j["slack_tags"] = tags;
    return j;
}

namespace
{
    Index row_width(const Json& M)
    {
        return M.empty() ? 0 : static_cast<Index>(M[0].size());
    }

    Index require_index(const Json& j, const char* key)
    {
        if (!j.contains(key))
            throw std::invalid_argument(std::string("missing field '") + key + "'");
        return j.at(key).get<Index>();
    }
} // namespace

HybridZonotope set_from_json(const Json& j)
{
    for (const char* key : {"n", "Gc", "Gb", "c", "Ac", "Ab", "b"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("set JSON is missing '") + key + "'");
    const Vector c = vector_from_json(j["c"]);
    const Index n = require_index(j, "n");
    if (c.size() != n)
        throw std::invalid_argument("set JSON: length of c differs from n");
    const Vector b = vector_from_json(j["b"]);
    const Index nc = b.size();
    // empty generator blocks carry no width, so take it from whichever block has rows
    const Index ng = std::max(row_width(j["Gc"]), row_width(j["Ac"]));
    const Index nb = std::max(row_width(j["Gb"]), row_width(j["Ab"]));
    const Matrix Gc = j["Gc"].empty() ? Matrix::Zero(n, ng) : matrix_from_json(j["Gc"], n, ng);
    const Matrix Gb = j["Gb"].empty() ? Matrix::Zero(n, nb) : matrix_from_json(j["Gb"], n, nb);
    const Matrix Ac = j["Ac"].empty() ? Matrix::Zero(nc, ng) : matrix_from_json(j["Ac"], nc, ng);
    const Matrix Ab = j["Ab"].empty() ? Matrix::Zero(nc, nb) : matrix_from_json(j["Ab"], nc, nb);
    std::vector<SlackTag> tags;
    if (j.contains("slack_tags"))
        for (const Json& t : j["slack_tags"])
            tags.push_back({t.at("column").get<Index>(), t.at("row").get<Index>()});
    return HybridZonotope(Gc, Gb, c, Ac, Ab, b, std::move(tags));
}

Json tree_to_json(const IntegerFeasibleSet& t)
{
    Json j;
    j["nb"] = t.nb();
    Json entries = Json::array();
    for (const BinaryAssignment& e : t)
    {
        Json row = Json::array();
        for (std::int8_t v : e.values())
            row.push_back(static_cast<int>(v));
        entries.push_back(std::move(row));
    }
    j["entries"] = entries;
    return j;
}

Json model_to_json(const MldModel& m)
{
    const MldDims& d = m.sys.dims;
    Json j;
    j["name"] = m.name;
    j["dims"] = Json{{"n_xc", d.n_xc}, {"n_xl", d.n_xl}, {"n_uc", d.n_uc}, {"n_ul", d.n_ul},
                     {"n_rc", d.n_rc}, {"n_rl", d.n_rl}, {"n_e", d.n_e}};
    j["A"] = matrix_to_json(m.sys.A);
    j["Bu"] = matrix_to_json(m.sys.Bu);
    j["Bw"] = matrix_to_json(m.sys.Bw);
    j["Baff"] = vector_to_json(m.sys.Baff);
    j["Ex"] = matrix_to_json(m.sys.Ex);
    j["Eu"] = matrix_to_json(m.sys.Eu);
    j["Ew"] = matrix_to_json(m.sys.Ew);
    j["Eaff"] = vector_to_json(m.sys.Eaff);
    j["X"] = set_to_json(m.domains.X);
    j["U"] = set_to_json(m.domains.U);
    j["W"] = set_to_json(m.domains.W);
    j["R0"] = set_to_json(m.R0);
    j["x_lo"] = vector_to_json(m.x_lo);
    j["x_hi"] = vector_to_json(m.x_hi);
    return j;
}

namespace
{
    // Interval hull of a set from its generator sums; exact for boxes.
    void interval_hull(const HybridZonotope& z, Vector& lo, Vector& hi)
    {
        const Vector r = z.Gc().cwiseAbs().rowwise().sum() + z.Gb().cwiseAbs().rowwise().sum();
        lo = z.c() - r;
        hi = z.c() + r;
    }
} // namespace

MldModel model_from_json(const Json& j)
{
    for (const char* key : {"dims", "A", "Bu", "Bw", "Baff", "Ex", "Eu", "Ew", "Eaff", "X", "U", "W"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("model JSON is missing '") + key + "'");
    MldModel m;
    m.name = j.value("name", std::string("model"));
    const Json& dj = j["dims"];
    MldDims& d = m.sys.dims;
    d.n_xc = require_index(dj, "n_xc");
    d.n_xl = require_index(dj, "n_xl");
    d.n_uc = require_index(dj, "n_uc");
    d.n_ul = require_index(dj, "n_ul");
    d.n_rc = require_index(dj, "n_rc");
    d.n_rl = require_index(dj, "n_rl");
    d.n_e = require_index(dj, "n_e");
    if (d.n_xc < 0 || d.n_xl < 0 || d.n_uc < 0 || d.n_ul < 0 || d.n_rc < 0 || d.n_rl < 0 || d.n_e < 0)
    {
        require_valid(m.sys);
    }
    const Index n = d.n();
    m.sys.A = matrix_from_json(j["A"], n, n);
    m.sys.Bu = matrix_from_json(j["Bu"], n, d.nu());
    m.sys.Bw = matrix_from_json(j["Bw"], n, d.nr());
    m.sys.Baff = vector_from_json(j["Baff"]);
    m.sys.Ex = matrix_from_json(j["Ex"], d.n_e, n);
    m.sys.Eu = matrix_from_json(j["Eu"], d.n_e, d.nu());
    m.sys.Ew = matrix_from_json(j["Ew"], d.n_e, d.nr());
    m.sys.Eaff = vector_from_json(j["Eaff"]);
    require_valid(m.sys);
    m.domains.X = set_from_json(j["X"]);
    m.domains.U = set_from_json(j["U"]);
    m.domains.W = set_from_json(j["W"]);
    if (m.domains.X.n() != n || m.domains.U.n() != d.nu() || m.domains.W.n() != d.nr())
        throw std::invalid_argument("model JSON: domain set dimensions differ from dims");
    m.R0 = j.contains("R0") ? set_from_json(j["R0"]) : m.domains.X;
    if (j.contains("x_lo") && j.contains("x_hi"))
    {
        m.x_lo = vector_from_json(j["x_lo"]);
        m.x_hi = vector_from_json(j["x_hi"]);
    }
    else
    {
        interval_hull(m.domains.X, m.x_lo, m.x_hi);
    }
    return m;
}

namespace
{
    Json index_list(const std::vector<Index>& v)
    {
        Json a = Json::array();
        for (Index i : v)
            a.push_back(i);
        return a;
    }

    Json dims_json(const SetDims& d) { return Json{{"ng", d.ng}, {"nb", d.nb}, {"nc", d.nc}}; }
} // namespace

Json report_to_json(const ReductionReport& r)
{
    Json j;
    j["before"] = dims_json(r.before);
    j["after"] = dims_json(r.after);
    j["removed_constraint_rows"] = index_list(r.removed_constraint_rows);
    j["removed_generator_columns"] = index_list(r.removed_generator_columns);
    if (r.binary_map)
        j["binary_map"] = matrix_to_json(*r.binary_map);
    if (r.binary_shift)
        j["binary_shift"] = vector_to_json(*r.binary_shift);
    return j;
}

Json result_to_json(const ReachResult& r)
{
    Json steps = Json::array();
    for (const StepRecord& rec : r.records)
    {
        Json s;
        s["k"] = rec.k;
        s["ng"] = rec.dims.ng;
        s["nb"] = rec.dims.nb;
        s["nc"] = rec.dims.nc;
        s["raw"] = dims_json(rec.raw_dims);
        s["tree_size"] = rec.tree_size ? Json(*rec.tree_size) : Json(nullptr);
        s["removed_rows"] = rec.removed_rows;
        s["removed_binaries"] = rec.removed_binaries;
        if (rec.inside_domain)
            s["inside_domain"] = *rec.inside_domain;
        if (rec.support_gap)
            s["support_gap"] = *rec.support_gap;
        if (rec.verified_leaves)
            s["verified_leaves"] = *rec.verified_leaves;
        steps.push_back(std::move(s));
    }
    Json j;
    j["steps"] = steps;
    j["possibly_inner"] = r.possibly_inner;
    Json ineq = Json::array();
    for (const auto& rep : r.inequality_reports)
        ineq.push_back(report_to_json(rep));
    Json bin = Json::array();
    for (const auto& rep : r.binary_reports)
        bin.push_back(report_to_json(rep));
    j["inequality_reports"] = ineq;
    j["binary_reports"] = bin;
    return j;
}

Json timings_to_json(const ReachResult& r)
{
    Json a = Json::array();
    for (const StepRecord& rec : r.records)
        a.push_back(Json{{"k", rec.k}, {"seconds", rec.seconds}});
    return Json{{"steps", a}};
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

} // namespace hybzono
