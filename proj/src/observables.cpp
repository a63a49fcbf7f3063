#include "catsim/observables.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "catsim/fourier.hpp"

namespace catsim {

namespace {

void warn_if_nonunitary(const Eigen::MatrixXcd& w, const char* who) {
    const double drift = column_norm_drift(w);
    if (drift > 1e-8)
        std::cerr << "catsim: warning: " << who
                  << ": propagator column norms drift by " << drift
                  << "; computing anyway\n";
}

// Row scaling by a per-axis-0 value table: value[index % N].
void scale_rows_by_axis0(Eigen::MatrixXcd& m, const Geometry& g,
                         const Eigen::VectorXd& table, int power) {
    const int n = g.n_cat();
    Eigen::VectorXd full(m.rows());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const double v = table[static_cast<Eigen::Index>(r % n)];
        full[r] = power == 2 ? v * v : v;
    }
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < m.cols(); ++c)
        m.col(c).array() *= full.array();
}

}  // namespace

ObservableDiag q_diag(const Geometry& g) {
    ObservableDiag o;
    o.rep = Rep::position;
    o.values.resize(static_cast<Eigen::Index>(g.dim()));
    const double n = static_cast<double>(g.n_cat());
    for (std::size_t k = 0; k < g.dim(); ++k)
        o.values[static_cast<Eigen::Index>(k)] =
            std::sin(2.0 * M_PI * static_cast<double>(g.large_index(k)) / n);
    return o;
}

ObservableDiag p_diag(const Geometry& g) {
    ObservableDiag o;
    o.rep = Rep::momentum;
    o.values.resize(static_cast<Eigen::Index>(g.dim()));
    const double n = static_cast<double>(g.n_cat());
    for (std::size_t k = 0; k < g.dim(); ++k)
        o.values[static_cast<Eigen::Index>(k)] =
            -std::sin(2.0 * M_PI * static_cast<double>(g.large_index(k)) / n);
    return o;
}

double acf(const DensePropagator& w, const Geometry& g) {
    warn_if_nonunitary(w.matrix, "acf");
    const Eigen::MatrixXcd& m = w.matrix;
    const int n = g.n_cat();
    Eigen::VectorXd q(n);
    for (int j = 0; j < n; ++j) q[j] = std::sin(2.0 * M_PI * j / n);

    const Eigen::Index dim = m.rows();
    Eigen::VectorXd col_sums(m.cols());
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < m.cols(); ++c) {
        double s = 0.0;
        for (Eigen::Index r = 0; r < dim; ++r)
            s += q[static_cast<Eigen::Index>(r % n)] * std::norm(m(r, c));
        col_sums[c] = s;
    }
    double total = 0.0;  // serial reduction keeps the result thread-count independent
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        total += col_sums[c] * q[static_cast<Eigen::Index>(c % n)];
    return total / static_cast<double>(g.dim());
}

OtocSample otoc_sample(const DensePropagator& w, const Geometry& g) {
    warn_if_nonunitary(w.matrix, "otoc");
    const Eigen::Index dim = w.matrix.rows();
    const int n = g.n_cat();
    Eigen::VectorXd q(n), p(n);
    for (int j = 0; j < n; ++j) {
        q[j] = std::sin(2.0 * M_PI * j / n);
        p[j] = -std::sin(2.0 * M_PI * j / n);
    }

    OtocSample out;

    // O_plus: rotate the input (column) basis of W to momentum on the large
    // particle, then sum p^2 q^2 |B|^2.
    {
        Eigen::MatrixXcd b = w.matrix;
        fft::column_index_axis0_transform(b, g, FourierDirection::to_position);
        Eigen::VectorXd col_sums(b.cols());
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < b.cols(); ++c) {
            double s = 0.0;
            for (Eigen::Index r = 0; r < dim; ++r) {
                const double qr = q[static_cast<Eigen::Index>(r % n)];
                s += qr * qr * std::norm(b(r, c));
            }
            col_sums[c] = s;
        }
        double total = 0.0;
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            const double pc = p[static_cast<Eigen::Index>(c % n)];
            total += pc * pc * col_sums[c];
        }
        out.o_plus = 2.0 * total / static_cast<double>(g.dim());
    }

    // O_minus: Q(t) = W^dag Q W (the one dense product), then P applied by
    // transforms, then the trace pairing Tr[(P Q(t))^2].
    {
        Eigen::MatrixXcd qw = w.matrix;
        scale_rows_by_axis0(qw, g, q, 1);
        Eigen::MatrixXcd qt(dim, dim);
        qt.noalias() = w.matrix.adjoint() * qw;

        fft::axis_transform(qt.data(), g.dim(),
                            static_cast<std::size_t>(qt.cols()), n, 1,
                            FourierDirection::to_momentum,
                            1.0 / std::sqrt(static_cast<double>(n)));
        scale_rows_by_axis0(qt, g, p, 1);
        fft::axis_transform(qt.data(), g.dim(),
                            static_cast<std::size_t>(qt.cols()), n, 1,
                            FourierDirection::to_position,
                            1.0 / std::sqrt(static_cast<double>(n)));

        std::complex<double> tr(0.0, 0.0);
        for (Eigen::Index c = 0; c < dim; ++c)
            for (Eigen::Index r = 0; r < dim; ++r)
                tr += qt(r, c) * qt(c, r);
        if (std::abs(tr.imag()) > 1e-8)
            throw std::logic_error(
                "otoc_minus: trace has imaginary residue " +
                std::to_string(tr.imag()));
        out.o_minus = 2.0 * tr.real() / static_cast<double>(g.dim());
    }

    out.o = out.o_plus - out.o_minus;
    return out;
}

double otoc_plus(const DensePropagator& w, const Geometry& g) {
    return otoc_sample(w, g).o_plus;
}

double otoc_minus(const DensePropagator& w, const Geometry& g) {
    return otoc_sample(w, g).o_minus;
}

double otoc(const DensePropagator& w, const Geometry& g) {
    return otoc_sample(w, g).o;
}

}  // namespace catsim
