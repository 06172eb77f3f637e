#pragma once

/// Everything: field arithmetic, polynomials, composite search, fiber analysis, refutation, families, certificates.

#include "certificate.hpp"
#include "decide.hpp"
#include "embed.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "families.hpp"
#include "fiber.hpp"
#include "field.hpp"
#include "number_theory.hpp"
#include "polynomial.hpp"
#include "refute.hpp"
#include "roots.hpp"
#include "search.hpp"
#include "text.hpp"
