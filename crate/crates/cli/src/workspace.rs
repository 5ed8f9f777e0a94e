use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use hvn_core::chartable::{character_table, CharacterTable};
use hvn_core::dynsys::TopSystem;
use hvn_core::formats::{self, GroupSpec};
use hvn_core::group::FiniteGroup;

use crate::CliError;

/// Loaded objects, keyed by the name the user referred to them by.
#[derive(Default)]
pub struct Workspace {
    groups: BTreeMap<String, GroupSpec>,
    systems: BTreeMap<String, (String, TopSystem)>,
    tables: BTreeMap<String, Arc<CharacterTable>>,
}

impl Workspace {
    /// Registers a group under `name`, reusing an equal group already loaded.
    pub fn add_group(&mut self, name: &str, spec: GroupSpec) -> Result<String, CliError> {
        if let Some(existing) = self.groups.iter().find(|(_, s)| *s.group == *spec.group).map(|(k, _)| k.clone()) {
            return Ok(existing);
        }
        if self.groups.contains_key(name) {
            return Err(CliError::usage(format!("group name {name:?} already bound to a different group")));
        }
        self.groups.insert(name.to_string(), spec);
        Ok(name.to_string())
    }

    pub fn load_group(&mut self, reference: &str) -> Result<String, CliError> {
        let spec = formats::resolve_group(reference, Path::new("."))?;
        self.add_group(reference, spec)
    }

    pub fn load_system(&mut self, path: &str) -> Result<String, CliError> {
        if self.systems.contains_key(path) {
            return Ok(path.to_string());
        }
        let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
        let dir = Path::new(path).parent().unwrap_or(Path::new("."));
        let (spec, sys) = formats::parse_action(&text, dir).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
        let group_name = self.add_group(&spec.name.clone(), spec)?;
        self.systems.insert(path.to_string(), (group_name, sys));
        Ok(path.to_string())
    }

    pub fn group(&self, name: &str) -> &Arc<FiniteGroup> {
        &self.groups[name].group
    }

    pub fn system(&self, name: &str) -> &TopSystem {
        &self.systems[name].1
    }

    pub fn system_group(&self, name: &str) -> &str {
        &self.systems[name].0
    }

    pub fn table(&mut self, group: &str) -> Result<Arc<CharacterTable>, CliError> {
        if let Some(t) = self.tables.get(group) {
            return Ok(t.clone());
        }
        let t = Arc::new(character_table(self.group(group))?);
        self.tables.insert(group.to_string(), t.clone());
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_groups_share_one_entry() {
        let mut ws = Workspace::default();
        let a = ws.load_group("S3").unwrap();
        let spec = formats::builtin_group("S3").unwrap();
        assert_eq!(ws.add_group("other", spec).unwrap(), a);
        let c = ws.load_group("C6").unwrap();
        assert_ne!(a, c);
        assert_eq!(ws.groups.len(), 2);
    }

    #[test]
    fn name_clash_with_different_group_is_rejected() {
        let mut ws = Workspace::default();
        ws.load_group("C4").unwrap();
        let spec = formats::builtin_group("C2xC2").unwrap();
        assert_eq!(ws.add_group("C4", spec).unwrap_err().code, 2);
    }

    #[test]
    fn tables_are_cached() {
        let mut ws = Workspace::default();
        let g = ws.load_group("D4").unwrap();
        let t1 = ws.table(&g).unwrap();
        let t2 = ws.table(&g).unwrap();
        assert!(Arc::ptr_eq(&t1, &t2));
        assert_eq!(t1.degrees(), &[1, 1, 1, 1, 2]);
    }
}
