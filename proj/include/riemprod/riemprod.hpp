#pragma once

#include "riemprod/tensor.hpp"
#include "riemprod/random.hpp"
#include "riemprod/structure.hpp"
#include "riemprod/curvature.hpp"
#include "riemprod/connection.hpp"
#include "riemprod/invariants.hpp"
#include "riemprod/classification.hpp"
#include "riemprod/verify.hpp"
#include "riemprod/io.hpp"
#include "riemprod/suite.hpp"
