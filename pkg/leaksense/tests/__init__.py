# Tests for leaksense modules
