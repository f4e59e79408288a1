#include "pgt/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pgt/errors.hpp"

namespace pgt::spectrum {

namespace {

std::int64_t isqrt64(std::int64_t v) {
    if (v < 0) throw std::logic_error("isqrt of negative value");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// ---- reduction theory of integral indefinite forms (a, b, c), D = b^2-4ac ----
//
// A form is reduced iff 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
// With r = floor(sqrt(D)) and D never a square here (D = t^2-4, t >= 3), the
// window is the integer range r-b+1 <= 2|a| <= r+b.  Reduced forms split into
// rho-cycles; two forms are properly equivalent iff they share a cycle, and
// matrix conjugacy classes of trace t correspond exactly to cycles of
// discriminant t^2 - 4 with arbitrary content.

struct Form {
    std::int64_t a, b, c;
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Form& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

std::vector<Form> reduced_forms(std::int64_t D) {
    const std::int64_t r = isqrt64(D);
    std::vector<Form> forms;
    for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= r; b += 2) {
        const std::int64_t m = (D - b * b) / 4; // = -a*c > 0
        const std::int64_t lo = r - b + 1, hi = r + b;
        for (std::int64_t e = 1; e * e <= m; ++e) {
            if (m % e != 0) continue;
            for (std::int64_t av : {e, m / e}) {
                if (2 * av < lo || 2 * av > hi) continue;
                forms.push_back({av, b, -(m / av)});
                forms.push_back({-av, b, m / av});
                if (e == m / e) break;
            }
        }
    }
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    return forms;
}

Form rho_step(const Form& f, std::int64_t D, std::int64_t r) {
    const std::int64_t two_c = 2 * std::llabs(f.c);
    std::int64_t b2 = r - ((r + f.b) % two_c + two_c) % two_c;
    const std::int64_t c2 = (b2 * b2 - D) / (4 * f.c);
    return {f.c, b2, c2};
}

std::int64_t count_form_cycles(std::int64_t D) {
    const std::vector<Form> forms = reduced_forms(D);
    const std::int64_t r = isqrt64(D);
    std::map<Form, bool> visited;
    for (const Form& f : forms) visited[f] = false;
    std::int64_t cycles = 0;
    for (const Form& f : forms) {
        if (visited[f]) continue;
        ++cycles;
        Form g = f;
        std::size_t guard = 0;
        do {
            auto it = visited.find(g);
            if (it == visited.end()) throw std::logic_error("rho left the reduced set");
            it->second = true;
            g = rho_step(g, D, r);
            if (++guard > forms.size() + 1) throw std::logic_error("rho cycle did not close");
        } while (!(g == f));
    }
    return cycles;
}

// Trace of the k-th power of a class of trace t0 (the Chebyshev-style
// sequence u_0 = 2, u_1 = t0, u_m = t0*u_{m-1} - u_{m-2}); returns -1 on
// exceeding 'cap' to keep the search bounded.
std::int64_t power_trace(std::int64_t t0, int k, std::int64_t cap) {
    std::int64_t prev = 2, cur = t0;
    for (int m = 1; m < k; ++m) {
        std::int64_t next = t0 * cur - prev;
        prev = cur;
        cur = next;
        if (cur > cap) return -1;
    }
    return cur;
}

// All (t0, k >= 2) with power_trace(t0, k) == t.
std::vector<std::pair<std::int64_t, int>> power_roots(std::int64_t t) {
    std::vector<std::pair<std::int64_t, int>> roots;
    for (std::int64_t t0 = 3; t0 * t0 - 2 <= t; ++t0) {
        for (int k = 2;; ++k) {
            std::int64_t u = power_trace(t0, k, t);
            if (u < 0 || u > t) break;
            if (u == t) {
                roots.emplace_back(t0, k);
                break;
            }
        }
    }
    return roots;
}

std::int64_t primitive_count_memo(std::int64_t t, std::map<std::int64_t, std::int64_t>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    std::int64_t count = count_form_cycles(t * t - 4);
    for (const auto& [t0, k] : power_roots(t)) count -= primitive_count_memo(t0, memo);
    if (count <= 0) throw std::logic_error("non-positive primitive class count");
    memo[t] = count;
    return count;
}

// ---- brute-force oracle helpers ----

struct Mat {
    std::int64_t a, b, c, d;
    bool operator==(const Mat& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

struct MatHash {
    std::size_t operator()(const Mat& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {m.a, m.b, m.c, m.d}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

Mat mat_mul(const Mat& x, const Mat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::int64_t mat_max_entry(const Mat& m) {
    return std::max(std::max(std::llabs(m.a), std::llabs(m.b)),
                    std::max(std::llabs(m.c), std::llabs(m.d)));
}

// S-recurrence S_1 = 1, S_2 = t0, S_m = t0*S_{m-1} - S_{m-2}; equals
// (lam0^k - lam0^-k)/(lam0 - lam0^-1).
std::int64_t s_value(std::int64_t t0, int k) {
    std::int64_t prev = 0, cur = 1;
    for (int m = 1; m < k; ++m) {
        std::int64_t next = t0 * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Whether M (trace t) is the k-th power of an integer matrix of trace t0.
// Any such root is (t0/2 - t/(2*S_k)) * I + (1/S_k) * M, so the test is pure
// divisibility.
bool has_integral_root(const Mat& m, std::int64_t t, std::int64_t t0, int k) {
    const std::int64_t s = s_value(t0, k);
    if (m.b % s != 0 || m.c % s != 0) return false;
    const std::int64_t na = t0 * s - t + 2 * m.a;
    const std::int64_t nd = t0 * s - t + 2 * m.d;
    return na % (2 * s) == 0 && nd % (2 * s) == 0;
}

// The (t0, k) decomposition of a class representative: the largest k such
// that an integral k-th root exists; k = 1 means the class is primitive.
std::pair<std::int64_t, int> primitive_root_of(const Mat& m, std::int64_t t) {
    std::int64_t best_t0 = t;
    int best_k = 1;
    for (const auto& [t0, k] : power_roots(t))
        if (k > best_k && has_integral_root(m, t, t0, k)) {
            best_t0 = t0;
            best_k = k;
        }
    return {best_t0, best_k};
}

std::int64_t max_trace_for_norm(double norm_bound) {
    if (!(norm_bound > 1.0)) throw ValidationError("norm_bound must be > 1");
    auto norm_of = [](std::int64_t t) {
        double lam = eigenvalue_for_trace(t);
        return lam * lam;
    };
    std::int64_t t = static_cast<std::int64_t>(std::sqrt(norm_bound) + 1.0 / std::sqrt(norm_bound)) + 2;
    while (t >= 3 && norm_of(t) > norm_bound) --t;
    return t; // < 3 means no trace qualifies
}

std::vector<GeodesicRecord> records_for_trace(std::int64_t t0, std::int64_t count, double norm_bound) {
    std::vector<GeodesicRecord> records;
    for (int k = 1;; ++k) {
        const double norm = power_norm(t0, k);
        if (norm > norm_bound) break;
        records.emplace_back(norm, power_length(t0, k), power_length(t0, 1), k == 1,
                             static_cast<int>(count));
    }
    return records;
}

} // namespace

double eigenvalue_for_trace(std::int64_t t) {
    if (t < 3) throw ValidationError("hyperbolic trace must be >= 3, got " + std::to_string(t));
    return (static_cast<double>(t) + std::sqrt(static_cast<double>(t * t - 4))) / 2.0;
}

double power_length(std::int64_t t0, int k) { return 2.0 * k * std::log(eigenvalue_for_trace(t0)); }

double power_norm(std::int64_t t0, int k) { return std::exp(power_length(t0, k)); }

std::int64_t class_count_for_trace(std::int64_t t) {
    if (t < 3)
        throw ValidationError("class_count_for_trace: t must be >= 3 (hyperbolic), got " + std::to_string(t));
    std::map<std::int64_t, std::int64_t> memo;
    return primitive_count_memo(t, memo);
}

std::vector<TraceClass> trace_classes(double norm_bound, int threads) {
    const std::int64_t t_max = max_trace_for_norm(norm_bound);
    std::vector<TraceClass> out;
    if (t_max < 3) return out;

    // Power subtraction only ever reaches down to traces <= sqrt(t_max + 2);
    // resolve those serially, then the remaining traces are independent.
    std::map<std::int64_t, std::int64_t> small_memo;
    const std::int64_t small_max = isqrt64(t_max + 2);
    for (std::int64_t t = 3; t <= std::min(small_max, t_max); ++t) primitive_count_memo(t, small_memo);

    out.resize(static_cast<std::size_t>(t_max - 2));
    auto fill_range = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t t = lo; t < hi; ++t) {
            std::int64_t count;
            if (t <= small_max) {
                count = small_memo.at(t);
            } else {
                count = count_form_cycles(t * t - 4);
                for (const auto& [t0, k] : power_roots(t)) count -= small_memo.at(t0);
                if (count <= 0) throw std::logic_error("non-positive primitive class count");
            }
            out[static_cast<std::size_t>(t - 3)] =
                TraceClass{t, t * t - 4, count, eigenvalue_for_trace(t)};
        }
    };

    const int workers = std::max(1, threads);
    if (workers == 1 || t_max - 3 < 64) {
        fill_range(3, t_max + 1);
    } else {
        std::vector<std::future<void>> futures;
        const std::int64_t span = t_max - 2;
        const std::int64_t chunk = (span + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = 3 + w * chunk;
            const std::int64_t hi = std::min<std::int64_t>(lo + chunk, t_max + 1);
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, fill_range, lo, hi));
        }
        for (auto& f : futures) f.get();
    }
    return out;
}

LengthSpectrum enumerate_spectrum(double norm_bound, int threads) {
    std::vector<GeodesicRecord> records;
    for (const TraceClass& tc : trace_classes(norm_bound, threads)) {
        auto recs = records_for_trace(tc.trace, tc.class_count, norm_bound);
        records.insert(records.end(), recs.begin(), recs.end());
    }
    return LengthSpectrum(std::move(records), norm_bound);
}

LengthSpectrum brute_force_spectrum(double norm_bound, std::int64_t entry_bound) {
    if (!(norm_bound > 1.0)) throw ValidationError("norm_bound must be > 1");
    if (entry_bound < 3) throw ValidationError("entry_bound must be >= 3");
    const std::int64_t t_max = max_trace_for_norm(norm_bound);
    std::map<std::pair<std::int64_t, int>, std::int64_t> class_tally;

    const Mat shear{1, 1, 0, 1}, shear_inv{1, -1, 0, 1}, flip{0, -1, 1, 0}, flip_inv{0, 1, -1, 0};
    const std::int64_t work_bound = 2 * entry_bound + 16;

    for (std::int64_t t = 3; t <= t_max; ++t) {
        // All det-1 matrices of trace t with entries within entry_bound.
        std::vector<Mat> seeds;
        const std::int64_t a_lo = std::max(-entry_bound, t - entry_bound);
        const std::int64_t a_hi = std::min(entry_bound, t + entry_bound);
        for (std::int64_t a = a_lo; a <= a_hi; ++a) {
            const std::int64_t d = t - a;
            const std::int64_t n = a * d - 1; // = b*c, never 0 for t >= 3
            const std::int64_t n_abs = std::llabs(n);
            for (std::int64_t e = 1; e * e <= n_abs; ++e) {
                if (n_abs % e != 0) continue;
                const std::int64_t f = n_abs / e;
                if (f > entry_bound) continue; // both factors must fit
                std::int64_t pairs[4][2] = {{e, n / e}, {-e, -(n / e)}, {f, n / f}, {-f, -(n / f)}};
                const int npairs = (e == f) ? 2 : 4;
                for (int pi = 0; pi < npairs; ++pi)
                    seeds.push_back({a, pairs[pi][0], pairs[pi][1], d});
            }
        }

        // Conjugator search: flood each class with the generator conjugations,
        // keeping intermediates within a working bound slightly above the
        // entry bound (reduction paths shrink entries, so the margin is only
        // needed to hop over local growth).
        std::unordered_set<Mat, MatHash> visited;
        visited.reserve(seeds.size() * 4);
        for (const Mat& seed : seeds) {
            if (visited.count(seed)) continue;
            std::deque<Mat> queue{seed};
            visited.insert(seed);
            while (!queue.empty()) {
                Mat m = queue.front();
                queue.pop_front();
                const Mat next[3] = {mat_mul(mat_mul(shear, m), shear_inv),
                                     mat_mul(mat_mul(shear_inv, m), shear),
                                     mat_mul(mat_mul(flip, m), flip_inv)};
                for (const Mat& nm : next) {
                    if (mat_max_entry(nm) > work_bound) continue;
                    if (visited.insert(nm).second) queue.push_back(nm);
                }
            }
            class_tally[primitive_root_of(seed, t)] += 1;
        }
    }

    std::vector<GeodesicRecord> records;
    for (const auto& [key, count] : class_tally) {
        const auto& [t0, k] = key;
        const double norm = power_norm(t0, k);
        if (norm > norm_bound) continue;
        records.emplace_back(norm, power_length(t0, k), power_length(t0, 1), k == 1,
                             static_cast<int>(count));
    }
    return LengthSpectrum(std::move(records), norm_bound);
}

} // namespace pgt::spectrum
