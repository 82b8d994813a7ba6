// Generate a noisy SWC instance, solve it with the pair DP and compare
// against the exact oracle.

#include <iostream>

#include <gmec/gmec.hpp>

int main ( int argc, char ** argv )
{
    gmec::GenSpec spec;
    spec.family    = gmec::Family::Swc;
    spec.n         = 14;
    spec.m         = 10;
    spec.flip_rate = 0.1;
    spec.seed      = argc > 1 ? std::stoull( argv[1] ) : 1;

    const auto g = gmec::generate( spec );
    gmec::write_mec( std::cout, g.matrix );

    gmec::Precision prec;
    prec.eps = { 1, 3 };
    const auto sol = gmec::solve_dp_pair( g.matrix, prec );
    const auto opt = gmec::exact_bipartition( g.matrix );

    std::cout << "\ndp-pair\n";
    gmec::write_solution( std::cout, sol );
    std::cout << "planted cost " << g.planted.cost << ", optimum " << opt.cost << '\n';
    return sol.cost >= opt.cost ? 0 : 1;
}
