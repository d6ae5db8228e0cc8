#pragma once

#include "cfs/analysis.hpp"
#include "cfs/automaton.hpp"
#include "cfs/decompose.hpp"
#include "cfs/dimension.hpp"
#include "cfs/spectra.hpp"

#include <string>
#include <vector>

namespace cfs {

// Automaton wire schema:
// {N, window, states: [[symbols]], transitions: [[i,j]],
//  fRanges: [[lo_num, lo_den, hi_num, hi_den]]}
std::string automaton_to_json(const SubshiftAutomaton& a);
SubshiftAutomaton automaton_from_json(const std::string& text);

std::string decomposition_to_json(const SubshiftAutomaton& a,
                                  const ComponentDecomposition& d);

std::string dimension_to_json(const DimensionEstimate& e, bool diagnostics);
std::string count_table_csv(const DimensionEstimate& e);     // r,count
std::string bisection_trace_csv(const DimensionEstimate& e); // s,rho

std::string dcurve_csv(const std::vector<DCurvePoint>& pts);  // t,dLo,dHi,window,r_max
std::string dcurve_json(const std::vector<DCurvePoint>& pts);

// x,y,z,value,decimal_60
std::string triples_csv(const std::vector<MarkovTriple>& triples, int digits = 60);
std::string triples_json(const std::vector<MarkovTriple>& triples, int digits = 60);

std::string crosscheck_json(const CrosscheckReport& r);
std::string crosscheck_csv(const CrosscheckReport& r);

std::string eta_minus_json(double eta, const ShiftLab::EtaMinus& r);
std::string connect_json(const std::vector<std::vector<Word>>& comps,
                         const std::vector<std::tuple<size_t, size_t, ShiftLab::Connect>>& results,
                         const Rational& t, const Rational& eps);
std::string family_json(const ShiftLab::Family& f);
std::string theta_json(const ShiftLab::Theta& th, int stages,
                       const std::vector<int>& gaps);
std::string classification_json(const Rational& t,
                                const ShiftLab::Classification& c);

const char* point_class_name(PointClass c);

}  // namespace cfs
