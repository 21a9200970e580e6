#pragma once

// Exact obstruction certificates for derived limits of nested non-Archimedean
// function algebras. Everything is computed in log coordinates over exact
// rationals; no decision in the library ever touches floating point.

#include "limcert/annulus.hpp"
#include "limcert/certificate.hpp"
#include "limcert/cocycle.hpp"
#include "limcert/envelope.hpp"
#include "limcert/errors.hpp"
#include "limcert/json_io.hpp"
#include "limcert/membership.hpp"
#include "limcert/rational.hpp"
#include "limcert/report.hpp"
#include "limcert/series.hpp"
#include "limcert/system.hpp"
#include "limcert/valuation.hpp"
