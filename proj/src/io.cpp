#include "scalefit/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <system_error>
#include <utility>
#include <vector>

#include "scalefit/errors.hpp"
#include "scalefit/random.hpp"

namespace scalefit {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

double parse_number(std::string_view cell, std::size_t line, const char* column) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw ParseError(line, std::string("column '") + column + "' is not a finite number: '" + std::string(cell) +
                                   "'");
    }
    return value;
}

void apply_comment(std::string_view body, MeasurementGrid& grid, std::size_t line) {
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) return;
    const auto key = trim(body.substr(0, colon));
    const auto value = trim(body.substr(colon + 1));
    if (key == "metric") {
        try {
            grid.metric_kind = metric_kind_from_string(value);
        } catch (const ValidationError& e) {
            throw ParseError(line, e.what());
        }
    } else if (key == "classes") {
        std::int64_t k = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
        if (ec != std::errc{} || ptr != value.data() + value.size() || k < 1) {
            throw ParseError(line, "classes must be a positive integer");
        }
        grid.num_classes = k;
    }
}

}  // namespace

std::string_view to_string(MetricKind kind) {
    return kind == MetricKind::top1_error ? "top1_error" : "cross_entropy";
}

MetricKind metric_kind_from_string(std::string_view text) {
    if (text == "top1_error" || text == "top1") return MetricKind::top1_error;
    if (text == "cross_entropy") return MetricKind::cross_entropy;
    throw ValidationError("unknown metric '" + std::string(text) + "'");
}

MeasurementGrid load_measurements(std::istream& in) {
    MeasurementGrid grid;
    std::set<std::pair<double, double>> seen;
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = trim(raw);
        if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text = trim(text.substr(3));
        if (text.empty()) continue;
        if (text.front() == '#') {
            apply_comment(text.substr(1), grid, line);
            continue;
        }
        const auto cells = split_commas(text);
        if (!header_seen) {
            if (cells.size() != 3 || cells[0] != "m" || cells[1] != "n" || cells[2] != "error") {
                throw ParseError(line, "expected header 'm,n,error'");
            }
            header_seen = true;
            continue;
        }
        if (cells.size() != 3) {
            throw ParseError(line, "expected 3 columns, found " + std::to_string(cells.size()));
        }
        Measurement p;
        p.m = parse_number(cells[0], line, "m");
        p.n = parse_number(cells[1], line, "n");
        p.eps = parse_number(cells[2], line, "error");
        if (p.m < 1.0 || p.m != std::floor(p.m)) {
            throw ValidationError("line " + std::to_string(line) + ": m must be a whole number >= 1");
        }
        if (p.n < 1.0 || p.n != std::floor(p.n)) {
            throw ValidationError("line " + std::to_string(line) + ": n must be a whole number >= 1");
        }
        if (!(p.eps > 0.0)) {
            throw ValidationError("line " + std::to_string(line) +
                                  ": error must be > 0 (relative divergence is undefined at zero)");
        }
        if (!seen.emplace(p.m, p.n).second) {
            throw ValidationError("line " + std::to_string(line) + ": duplicate configuration (m, n) = (" +
                                  format_double(p.m) + ", " + format_double(p.n) + ")");
        }
        grid.points.push_back(p);
    }
    if (!header_seen) throw ParseError(line, "missing header 'm,n,error'");
    if (grid.points.empty()) throw ValidationError("no measurements in input");
    canonical_sort(grid);
    return grid;
}

MeasurementGrid load_measurements(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return load_measurements(in);
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void write_measurements(std::ostream& out, const MeasurementGrid& grid) {
    out << "# metric: " << to_string(grid.metric_kind) << '\n';
    if (grid.num_classes) out << "# classes: " << *grid.num_classes << '\n';
    out << "m,n,error\n";
    for (const auto& p : grid.points) {
        out << format_double(p.m) << ',' << format_double(p.n) << ',' << format_double(p.eps) << '\n';
    }
}

std::string measurements_to_csv(const MeasurementGrid& grid) {
    std::ostringstream out;
    write_measurements(out, grid);
    return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write '" + tmp.string() + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw ValidationError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ValidationError("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

MeasurementGrid synth_landscape(const ThetaParams& theta, std::span<const double> m_levels,
                                std::span<const double> n_levels, std::optional<MultiplicativeNoise> noise) {
    validate(theta);
    if (m_levels.empty() || n_levels.empty()) throw DomainError("size levels must be nonempty");
    std::vector<double> ms(m_levels.begin(), m_levels.end());
    std::vector<double> ns(n_levels.begin(), n_levels.end());
    for (double v : ms) {
        if (!(v >= 1.0) || !std::isfinite(v)) throw DomainError("model levels must be >= 1");
    }
    for (double v : ns) {
        if (!(v >= 1.0) || !std::isfinite(v)) throw DomainError("data levels must be >= 1");
    }
    std::sort(ms.begin(), ms.end());
    std::sort(ns.begin(), ns.end());
    if (std::adjacent_find(ms.begin(), ms.end()) != ms.end() || std::adjacent_find(ns.begin(), ns.end()) != ns.end()) {
        throw DomainError("size levels must be distinct");
    }
    if (noise && !(noise->amplitude >= 0.0 && noise->amplitude < 1.0)) {
        throw DomainError("noise amplitude must lie in [0, 1)");
    }

    std::optional<Rng> rng;
    if (noise) rng.emplace(noise->seed, streams::synthetic_noise);
    MeasurementGrid grid;
    grid.metric_kind = theta.eps0_fixed ? MetricKind::top1_error : MetricKind::cross_entropy;
    grid.points.reserve(ms.size() * ns.size());
    for (double m : ms) {
        for (double n : ns) {
            double eps = eval_envelope(theta, m, n);
            if (rng) eps *= 1.0 + noise->amplitude * (2.0 * rng->uniform() - 1.0);
            grid.points.push_back({m, n, eps});
        }
    }
    return grid;
}

}  // namespace scalefit
