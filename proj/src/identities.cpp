#include "mkt/identities.hpp"

#include "mkt/errors.hpp"

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mkt {

IdentityReport check_identity_12(int N, const MobiusTable& table) {
    if (N < 1) throw std::invalid_argument("check_identity_12: N must be >= 1");
    long long n2 = static_cast<long long>(N) * N;
    if (table.limit < n2)
        throw TableTooSmall("check_identity_12: need table limit >= N^2 = " + std::to_string(n2));

    Rational n2r((long)n2);
    Rational lhs = Rational((long)table.prefix(n2)) / n2r + mobius_quadratic_form(N, table);

    long long mn = table.prefix(N);
    Rational harmonic(0);
    for (int m = 1; m <= N; ++m) {
        int mu = table.mu(m);
        if (mu != 0) harmonic += Rational((long)mu, (long)m);
    }
    Rational rhs = Rational((long)(mn * (mn + 4))) / (Rational(2) * n2r) - harmonic * harmonic;
    return {N, lhs, rhs, lhs - rhs};
}

IdentityReport check_mertens_1897(long long n, const MobiusTable& table) {
    if (n < 1) throw std::invalid_argument("check_mertens_1897: n must be >= 1");
    if (table.limit < n)
        throw TableTooSmall("check_mertens_1897: need table limit >= " + std::to_string(n));

    Integer root = isqrt(Integer((long)n));
    long long s = root.get_si();

    __int128 dsum = 0;
    for (long long r = 1; r <= s; ++r) {
        int mur = table.mu(r);
        if (mur == 0) continue;
        __int128 row = 0;
        for (long long t = r; t <= s; ++t) {
            int mut = table.mu(t);
            if (mut == 0) continue;
            long long term = static_cast<long long>(mur * mut) * (n / (r * t));
            row += (t == r) ? term : 2 * term;
        }
        dsum += row;
    }

    long long lhs = table.prefix(n);
    __int128 rhs = 2 * static_cast<__int128>(table.prefix(s)) - dsum;
    Integer rhs_z;
    {
        bool neg = rhs < 0;
        unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-rhs) : static_cast<unsigned __int128>(rhs);
        rhs_z = Integer(static_cast<unsigned long>(mag >> 64));
        rhs_z <<= 64;
        rhs_z += static_cast<unsigned long>(mag);
        if (neg) rhs_z = -rhs_z;
    }
    Rational l((long)lhs);
    Rational r(rhs_z);
    return {n, l, r, l - r};
}

ScanResult scan_identities(IdentityKind kind, long long lo, long long hi, const MobiusTable& table) {
    ScanResult result;
    if (hi < lo) return result;

    size_t count = static_cast<size_t>(hi - lo + 1);
    result.reports.resize(count);

    auto eval_one = [&](size_t idx) {
        long long p = lo + static_cast<long long>(idx);
        result.reports[idx] = (kind == IdentityKind::eq12)
                                  ? check_identity_12(static_cast<int>(p), table)
                                  : check_mertens_1897(p, table);
    };

    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(count));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) eval_one(i);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    try {
                        eval_one(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    for (const auto& r : result.reports)
        if (!r.residual.is_zero()) result.all_zero = false;
    return result;
}

} // namespace mkt
