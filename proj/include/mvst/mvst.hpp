#pragma once

#include <mvst/classifiers.hpp>
#include <mvst/data.hpp>
#include <mvst/dataset_io.hpp>
#include <mvst/distances.hpp>
#include <mvst/error.hpp>
#include <mvst/evaluation.hpp>
#include <mvst/random.hpp>
#include <mvst/shapelets.hpp>
#include <mvst/shapelets_io.hpp>
#include <mvst/synthetic.hpp>

namespace mvst {
  inline constexpr const char* version = "1.0.0";
}
