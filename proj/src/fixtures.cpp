#include "scalefit/fixtures.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

#include "scalefit/errors.hpp"

namespace scalefit {

namespace {

using enum MetricKind;

// Image classification fits top-1 error with eps0 fixed; language modeling
// fits cross-entropy with eps0 free.
constexpr std::array<FixtureRecord, 9> kFixtures{{
    {"imagenet", "ImageNet", top1_error, 1000,
     "0.75403879", "0.61131518", "0.75575083", "3.62934233", "18.50376969", "",
     25.5e6, 1.28e6, 0, 6, 0, 6},
    {"cifar10", "CIFAR10", top1_error, 10,
     "0.655043783", "0.534102925", "5.87E-02", "7.14E-14", "19.7701518", "",
     0.7e6, 60e3, -3, 4, 0, 5},
    {"cifar100", "CIFAR100", top1_error, 100,
     "0.70403326", "0.50562759", "0.14727227", "0.70969734", "6.92618391", "",
     0.7e6, 60e3, -2, 4, 0, 5},
    {"dtd", "DTD", top1_error, 47,
     "0.400319211", "1.16231333", "4.30E-05", "1.27E-09", "0.846839835", "",
     0.7e6, 5640, -2, 4, 0, 5},
    {"aircraft", "Aircraft", top1_error, 100,
     "1.10233368", "0.831731092", "3.47E-03", "5.16E-10", "1.12529537", "",
     0.7e6, 10e3, -2, 4, 0, 5},
    {"ucf101", "UCF101", top1_error, 101,
     "0.933547255", "0.537578077", "4.68E-02", "1.16E-09", "2.98124532", "",
     0.7e6, 13e3, -2, 4, 0, 5},
    {"ptb", "PTB", cross_entropy, std::nullopt,
     "0.80962791", "0.34315027", "0.14690378", "4.99807364", "6.27494232", "6.09699692",
     20e6, 0.9e6, 0, 6, 0, 5},
    {"wikitext2", "WikiText-2", cross_entropy, std::nullopt,
     "1.00822978", "0.21667458", "0.99145936", "8.23497095", "10.37612973", "6.21205331",
     20e6, 2e6, 0, 6, 0, 5},
    {"wikitext103", "WikiText-103", cross_entropy, std::nullopt,
     "0.73505031", "0.55718887", "0.32914295", "9.03598661", "16.33563873", "6.59633058",
     41e6, 100e6, 0, 6, 0, 5},
}};

double parse_value(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError("corrupt fixture value '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> ladder(double full, double base, int k_min, int k_max) {
    std::vector<double> out;
    for (int k = k_max; k >= k_min; --k) out.push_back(std::round(full * std::pow(base, -k)));
    return out;
}

}  // namespace

ThetaParams FixtureRecord::theta() const {
    ThetaParams t;
    t.alpha = parse_value(alpha);
    t.beta = parse_value(beta);
    t.b = parse_value(b);
    t.c_inf = parse_value(c_inf);
    t.eta = parse_value(eta);
    if (num_classes) {
        t.eps0 = static_cast<double>(*num_classes - 1) / static_cast<double>(*num_classes);
        t.eps0_fixed = true;
    } else {
        t.eps0 = parse_value(eps0);
        t.eps0_fixed = false;
    }
    return t;
}

ThetaParams FixtureRecord::theta_for_counts() const { return rescale_sizes(theta(), full_m, full_n); }

std::vector<double> FixtureRecord::m_levels() const { return ladder(full_m, 4.0, m_k_min, m_k_max); }

std::vector<double> FixtureRecord::n_levels() const { return ladder(full_n, 2.0, n_k_min, n_k_max); }

std::span<const FixtureRecord> fixtures() { return kFixtures; }

const FixtureRecord& fixture(std::string_view name) {
    for (const auto& f : kFixtures) {
        if (f.name == name) return f;
    }
    throw ValidationError("unknown fixture '" + std::string(name) + "'");
}

std::uint64_t fixture_checksum() {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto feed = [&](std::string_view s) {
        for (unsigned char ch : s) {
            hash ^= ch;
            hash *= 0x100000001b3ULL;
        }
    };
    for (const auto& f : kFixtures) {
        feed(f.name);
        feed(":");
        for (std::string_view v : {f.alpha, f.beta, f.b, f.c_inf, f.eta}) {
            feed(v);
            feed(",");
        }
        feed(f.eps0);
        feed(";");
    }
    return hash;
}

}  // namespace scalefit
