#pragma once

#include "xhermite/partition.hpp"
#include "xhermite/poly.hpp"
#include "xhermite/zeros.hpp"

namespace xh {

// Everything downstream analyses need about one (partition, degree) case.
struct CaseData {
    Partition lambda;
    int n = 0;             // number of on-axis zeros; total degree is size+n
    unsigned bits = 192;
    ExactPoly denom;       // the partition's denominator polynomial
    ExactPoly p;           // the degree-(size+n) member
    HRoots hw;             // roots of denom
    HRoots proots;         // raw roots of p with per-root residuals
    ZeroSet zs;            // classified zeros of p
};

// Construct both polynomials exactly, solve them (denominator roots seed the
// off-axis zeros; classical zeros of the matching total degree seed the
// on-axis ones), and classify. Throws on inadmissible degree, a real
// denominator root for an even partition, or a failed classification.
CaseData build_case(const Partition& lambda, int n, unsigned precision_bits);

} // namespace xh
