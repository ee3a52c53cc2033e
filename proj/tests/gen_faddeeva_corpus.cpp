// Writes the Faddeeva regression table from the multiprecision reference.
// Usage: gen_faddeeva_corpus <out.txt>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <vector>

#include "support/mp_faddeeva.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: gen_faddeeva_corpus <out.txt>\n";
        return 1;
    }
    std::vector<std::complex<double>> pts;
    // region seams of the fast kernel, and the axes
    for (double r : {0.5, 0.999, 1.001, 1.49, 1.51, 3.0, 5.99, 6.01, 10.0, 30.0}) {
        for (int k = 0; k < 8; ++k) {
            const double th = -M_PI + 2 * M_PI * k / 8.0;
            pts.emplace_back(r * std::cos(th), r * std::sin(th));
        }
    }
    for (double x : {0.0, 0.1, 1.0, 2.5, 5.0, 8.0, 20.0, 50.0}) {
        pts.emplace_back(x, 0.0);
        pts.emplace_back(0.0, x);
        pts.emplace_back(x, 1.4999);
        pts.emplace_back(x, 1.5);
    }
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    while (pts.size() < 640) {
        const double r = std::exp(std::log(1e-3) + (std::log(50.0) - std::log(1e-3)) * u01(rng));
        const double th = -M_PI + 2 * M_PI * u01(rng);
        const std::complex<double> z(r * std::cos(th), r * std::sin(th));
        if (z.imag() < 0 && z.imag() * z.imag() - z.real() * z.real() > 600.0) {
            continue;
        }
        pts.push_back(z);
    }
    std::ofstream out(argv[1]);
    out << "# Faddeeva function w(z) reference values, 110-digit arithmetic rounded to 17 digits\n";
    out << "# z_re z_im w_re w_im precision_digits\n";
    char buf[256];
    int rows = 0;
    for (const auto& z : pts) {
        if (z.imag() < 0 && z.imag() * z.imag() - z.real() * z.real() > 600.0) {
            continue;
        }
        const auto w = mpref::to_double(mpref::w(mpref::from(z)));
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g 110\n", z.real(), z.imag(), w.real(), w.imag());
        out << buf;
        ++rows;
    }
    std::cerr << "wrote " << rows << " rows\n";
    return 0;
}
