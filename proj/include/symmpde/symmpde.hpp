#ifndef SYMMPDE_SYMMPDE_HPP
#define SYMMPDE_SYMMPDE_HPP

#include "algebra.hpp"
#include "calculus.hpp"
#include "catalog.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "expr.hpp"
#include "grid.hpp"
#include "jet.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "print.hpp"
#include "rational_function.hpp"
#include "symmetry.hpp"
#include "weierstrass.hpp"
#include "zero_test.hpp"

#endif
