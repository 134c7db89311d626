#include "fibdual/io.hpp"
