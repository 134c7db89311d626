#pragma once

#include "fibdual/sset_ops.hpp"
