from hypothesis import settings

# Wall-clock deadlines make property tests flaky on loaded machines; the
# acceptance suite owns the one real runtime budget.
settings.register_profile("default", deadline=None)
settings.load_profile("default")
