#include "polymat/material.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace polymat {

MaterialSet::MaterialSet(EnergyGrid grid, std::vector<Material> materials)
    : grid_(std::move(grid)), materials_(std::move(materials))
{
    if (materials_.size() < 2)
        throw std::invalid_argument("MaterialSet: need at least two materials");
    std::set<std::string> names;
    for (const auto& m : materials_) {
        if (!(m.density > 0.0))
            throw std::invalid_argument("MaterialSet: density must be positive (" + m.name + ")");
        if (m.lac.size() != grid_.size())
            throw std::invalid_argument("MaterialSet: LAC length mismatch (" + m.name + ")");
        for (double v : m.lac)
            if (!(v >= 0.0))
                throw std::invalid_argument("MaterialSet: negative LAC (" + m.name + ")");
        if (!names.insert(m.name).second)
            throw std::invalid_argument("MaterialSet: duplicate material name " + m.name);
    }
}

std::size_t MaterialSet::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < materials_.size(); ++i)
        if (materials_[i].name == name)
            return i;
    throw std::out_of_range("MaterialSet: unknown material " + name);
}

namespace {

struct TableRow {
    double energy_kev;
    double mac;
};

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what)
{
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

Material ingest_attenuation_table(const std::string& path, const EnergyGrid& grid)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open attenuation table " + path);

    Material mat;
    bool have_density = false;
    std::vector<TableRow> rows;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            const auto colon = body.find(':');
            if (colon == std::string::npos)
                parse_fail(path, line_no, "malformed header line");
            std::string key = body.substr(0, colon);
            std::string value = body.substr(colon + 1);
            auto trim = [](std::string& s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
            };
            trim(key);
            trim(value);
            if (key == "material") {
                mat.name = value;
            } else if (key == "density_g_cm3") {
                try {
                    std::size_t used = 0;
                    mat.density = std::stod(value, &used);
                    if (used != value.size())
                        parse_fail(path, line_no, "trailing junk in density");
                } catch (const std::logic_error&) {
                    parse_fail(path, line_no, "unparseable density value");
                }
                have_density = true;
            }
            // Unknown header keys are allowed (provenance notes etc).
            continue;
        }
        if (line == "energy_keV,mac_cm2_g")
            continue;

        const auto comma = line.find(',');
        if (comma == std::string::npos)
            parse_fail(path, line_no, "expected `energy_keV,mac_cm2_g` row");
        double energy = 0.0;
        double mac = 0.0;
        try {
            std::size_t used = 0;
            energy = std::stod(line.substr(0, comma), &used);
            std::string rest = line.substr(comma + 1);
            mac = std::stod(rest, &used);
            if (used != rest.size())
                parse_fail(path, line_no, "trailing junk in row");
        } catch (const std::logic_error&) {
            parse_fail(path, line_no, "unparseable numeric row");
        }
        if (!rows.empty() && energy <= rows.back().energy_kev)
            parse_fail(path, line_no, "energies must be strictly ascending");
        if (!(mac >= 0.0))
            parse_fail(path, line_no, "negative mass attenuation");
        rows.push_back({energy, mac});
    }

    if (mat.name.empty())
        throw std::runtime_error(path + ": missing `# material:` header");
    if (!have_density)
        throw std::runtime_error(path + ": missing `# density_g_cm3:` header");
    if (!(mat.density > 0.0))
        throw std::runtime_error(path + ": density must be positive");
    if (rows.size() < 2)
        throw std::runtime_error(path + ": need at least two table rows");
    if (grid.min_kev() < rows.front().energy_kev || grid.max_kev() > rows.back().energy_kev)
        throw std::out_of_range(path + ": table span ["
                                + std::to_string(rows.front().energy_kev) + ", "
                                + std::to_string(rows.back().energy_kev)
                                + "] keV does not cover the energy grid");

    mat.lac.resize(grid.size());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = grid.at(i);
        while (seg + 2 < rows.size() && rows[seg + 1].energy_kev < e)
            ++seg;
        const auto& lo = rows[seg];
        const auto& hi = rows[seg + 1];
        const double t = (e - lo.energy_kev) / (hi.energy_kev - lo.energy_kev);
        const double mac = lo.mac + t * (hi.mac - lo.mac);
        mat.lac[i] = mac * mat.density;
    }
    return mat;
}

bool on_simplex(std::span<const double> alpha, double tol)
{
    double sum = 0.0;
    for (double a : alpha) {
        if (!(a >= -tol) || !(a <= 1.0 + tol))
            return false;
        sum += a;
    }
    return std::fabs(sum - 1.0) <= tol;
}

double mixture_lac(const MaterialSet& set, std::span<const double> alpha,
                   std::size_t e_index)
{
    if (alpha.size() != set.count())
        throw std::invalid_argument("mixture_lac: fraction vector length mismatch");
    if (e_index >= set.grid().size())
        throw std::out_of_range("mixture_lac: energy index out of range");
    if (!on_simplex(alpha))
        throw std::invalid_argument("mixture_lac: fractions are not on the simplex");

    double mu = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        mu += alpha[i] * set.at(i).lac[e_index];
    return mu;
}

}  // namespace polymat
