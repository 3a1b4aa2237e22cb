#include "capture/coefficients.hpp"

#include "capture/errors.hpp"

namespace capture {

namespace {

// sum_{k=0}^{n} v_k v_{n-k}, using symmetry to halve the multiplications.
Rational self_convolution(const std::vector<Rational>& v, int n) {
    Rational sum = 0;
    for (int k = 0; 2 * k < n; ++k) sum += v[k] * v[n - k];
    sum *= 2;
    if (n % 2 == 0) sum += v[n / 2] * v[n / 2];
    return sum;
}

// x_n = n!(n+1)! v_n, asserting exact integrality.
std::vector<Int> integerize(const std::vector<Rational>& v, const char* what) {
    std::vector<Int> out;
    out.reserve(v.size());
    Int fact_n = 1;    // n!
    Int fact_n1 = 1;   // (n+1)!
    for (size_t n = 0; n < v.size(); ++n) {
        if (n > 0) {
            fact_n *= n;
            fact_n1 = fact_n * Int(n + 1);
        }
        Rational scaled = Rational(fact_n * fact_n1) * v[n];
        if (denominator(scaled) != 1)
            throw InternalInconsistencyError(std::string(what) + " failed integrality at n = " +
                                             std::to_string(n) + ": " + to_string(scaled));
        out.push_back(numerator(scaled));
    }
    return out;
}

}  // namespace

CoefficientTable generate_B(int N) {
    if (N < 0) throw InvalidArgumentError("generate_B: negative order");
    std::vector<Rational> B(static_cast<size_t>(N) + 1);
    B[0] = 1;
    for (int n = 0; n < N; ++n)
        B[n + 1] = self_convolution(B, n) / Rational((n + 1) * (n + 2));
    CoefficientTable table{std::move(B), {}, N};
    table.b = integer_b(table);
    return table;
}

std::vector<Int> integer_b(const CoefficientTable& table) {
    return integerize(table.B, "b_n = n!(n+1)! B_n");
}

std::vector<Int> sequence_d(int N) {
    if (N < 0) throw InvalidArgumentError("sequence_d: negative order");
    std::vector<Rational> D(static_cast<size_t>(N) + 1);
    D[0] = 1;
    for (int n = 0; n < N; ++n)
        D[n + 1] = self_convolution(D, n) / Rational(n + 2);
    return integerize(D, "d_n = n!(n+1)! D_n");
}

std::vector<Int> catalan(int N) {
    if (N < 0) throw InvalidArgumentError("catalan: negative order");
    std::vector<Int> C(static_cast<size_t>(N) + 1);
    C[0] = 1;
    for (int n = 0; n < N; ++n) {
        Int sum = 0;
        for (int k = 0; k <= n; ++k) sum += C[k] * C[n - k];
        C[n + 1] = sum;
    }
    // Cross-check against the closed form (2n)!/((n+1)! n!).
    Int fact_n = 1, fact_n1 = 1, fact_2n = 1;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            fact_n *= n;
            fact_n1 = fact_n * Int(n + 1);
            fact_2n *= Int(2 * n - 1) * Int(2 * n);
        }
        Int closed = fact_2n / (fact_n1 * fact_n);
        if (closed != C[n])
            throw InternalInconsistencyError("catalan recurrence/closed form mismatch at n = " +
                                             std::to_string(n));
    }
    return C;
}

}  // namespace capture
